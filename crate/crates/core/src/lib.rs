//! Computational order topology.
//!
//! Two tiers share one relation-algebra core:
//!
//! * [`finite`] checks closedness, separation, representation and
//!   quotients exactly on finite topological preordered spaces.
//! * [`sampled`] and [`compact`] build numeric `H`-compactifications of
//!   cataloged non-compact preordered spaces: embed samples into a cube
//!   `[0,1]^(H ∪ C)`, detect the limits of each end, and compare the
//!   resulting preordered vertex sets.
//!
//! [`cli`] wires both tiers to the `ordcomp` binary.

pub mod cli;
pub mod compact;
pub mod error;
pub mod finite;
pub mod relation;
pub mod report;
pub mod sampled;

pub use error::{Error, Result};
pub use relation::{EquivalenceClasses, PreorderGraph};
pub use report::{Check, CheckReport, Witness};
