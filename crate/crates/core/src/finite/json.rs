//! JSON space files: `{ "n": 3, "basis": [[0],[0,1]], "relation": [[0,1]] }`.
//!
//! `basis` generates the topology (all unions of finite intersections,
//! plus the empty set and the whole space). `relation` is closed to the
//! smallest preorder containing it.

use serde::{Deserialize, Serialize};

use super::space::FinitePreorderedSpace;
use super::topology::FiniteTopology;
use crate::error::Result;
use crate::relation::transitive_reflexive_closure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub n: usize,
    #[serde(default)]
    pub basis: Vec<Vec<usize>>,
    #[serde(default)]
    pub relation: Vec<(usize, usize)>,
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<FinitePreorderedSpace> {
        let topology = FiniteTopology::from_basis(self.n, &self.basis)?;
        let preorder = transitive_reflexive_closure(self.relation.iter().copied(), self.n)?;
        FinitePreorderedSpace::new(topology, preorder)
    }
}

pub fn parse_space(text: &str) -> Result<FinitePreorderedSpace> {
    SpaceFile::parse(text)?.build()
}
