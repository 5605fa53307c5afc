//! Exact engine for finite topological preordered spaces.

mod functions;
mod json;
mod space;
mod topology;

pub use functions::{
    enumerate_isotone_functions, is_continuous, is_isotone, monotone_separation,
    representation_check, ChainFunction, Separation, DEFAULT_ENUMERATION_BUDGET,
};
pub use json::{parse_space, SpaceFile};
pub use space::{smallest_closed_preorder, FinitePreorderedSpace};
pub use topology::FiniteTopology;
