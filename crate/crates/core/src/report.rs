//! Named pass/fail results with counterexample witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Point { point: usize },
    Pair { left: usize, right: usize },
    Points { points: Vec<usize> },
    Note { note: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

/// Ordered list of checks plus numeric metrics. A failed check always
/// carries a witness.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub metrics: BTreeMap<String, f64>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            witness: None,
        });
        self
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        });
        self
    }

    /// Records `name` as passed when `witness` is `None`.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<Witness>) -> &mut Self {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.metrics.insert(name.into(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn is_pass(&self, name: &str) -> bool {
        self.get(name).map(|c| c.passed).unwrap_or(false)
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.get(name).and_then(|c| c.witness.as_ref())
    }

    /// Appends all checks of `other`, prefixing their names.
    pub fn merge(&mut self, prefix: &str, other: CheckReport) -> &mut Self {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.metrics {
            self.metrics.insert(format!("{prefix}.{k}"), v);
        }
        self
    }
}
