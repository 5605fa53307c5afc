use serde::Serialize;

use super::{nearest, Compactification};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};

/// Largest remainder on either side of an exhaustive domination search.
pub const MAX_SEARCH_REMAINDER: usize = 8;

/// A candidate map `C: source → target` between the vertex sets of two
/// compactifications of the same sample, with its checks.
#[derive(Debug, Clone, Serialize)]
pub struct DominationMap {
    pub source: String,
    pub target: String,
    pub vertex_map: Vec<usize>,
    pub checks: CheckReport,
}

impl DominationMap {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RejectedCandidate {
    /// Source remainder vertex to target vertex.
    pub assignment: Vec<(usize, usize)>,
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominationAttempt {
    pub found: Option<DominationMap>,
    pub rejected: Vec<RejectedCandidate>,
}

impl Compactification {
    pub fn label(&self) -> String {
        format!("{} H={}", self.space, self.family.label())
    }
}

fn require_same_sample(a: &Compactification, b: &Compactification) -> Result<()> {
    if a.space != b.space {
        return Err(Error::Incompatible(format!(
            "spaces {} and {}",
            a.space, b.space
        )));
    }
    let (pa, pb) = (a.params, b.params);
    if pa.resolution != pb.resolution || pa.tail_depth != pb.tail_depth || pa.eps_q != pb.eps_q {
        return Err(Error::Incompatible("different sampling parameters".into()));
    }
    Ok(())
}

/// Runs the three domination checks on `map: source → target`.
fn check_map(source: &Compactification, target: &Compactification, map: &[usize]) -> CheckReport {
    let mut r = CheckReport::new();

    let sample_fail = (0..source.sample_map.len())
        .find(|&s| map[source.sample_map[s]] != target.sample_map[s])
        .map(|point| Witness::Point { point });
    let tail_fail = || {
        source
            .tails
            .iter()
            .zip(&target.tails)
            .find(|(ts, tt)| match (ts.vertex, tt.vertex) {
                (Some(vs), Some(vt)) => map[vs] != vt,
                _ => false,
            })
            .map(|(t, _)| Witness::Note {
                note: format!("end {} thread {}", t.end, t.thread),
            })
    };
    r.record("commutes_on_samples", sample_fail.or_else(tail_fail));

    r.record(
        "isotone",
        source
            .induced
            .pairs()
            .find(|&(a, b)| !target.induced.le(map[a], map[b]))
            .map(|(left, right)| Witness::Pair { left, right }),
    );

    let into = source
        .remainder_ids()
        .into_iter()
        .find(|&v| !target.is_remainder(map[v]))
        .map(|point| Witness::Point { point });
    let onto = || {
        let hit: Vec<usize> = source.remainder_ids().iter().map(|&v| map[v]).collect();
        target
            .remainder_ids()
            .into_iter()
            .find(|w| !hit.contains(w))
            .map(|w| Witness::Note {
                note: format!("target remainder vertex {w} is not hit"),
            })
    };
    r.record("remainder_to_remainder", into.or_else(onto));
    r
}

/// The projection `[0,1]^(H₂ ∪ C) → [0,1]^(H₁ ∪ C)` restricted to the
/// vertices of `comp2`, each image snapped to the nearest vertex of
/// `comp1` (lowest id on ties).
pub fn dominate(comp2: &Compactification, comp1: &Compactification) -> Result<DominationMap> {
    require_same_sample(comp2, comp1)?;
    let h2 = comp2.family.h_names();
    let missing: Vec<String> = comp1
        .family
        .h_names()
        .into_iter()
        .filter(|n| !h2.contains(n))
        .collect();
    if !missing.is_empty() {
        return Err(Error::FamilyMismatch(format!(
            "H₁ functions {} are not in H₂",
            missing.join(",")
        )));
    }
    if comp1.family.c_names() != comp2.family.c_names() {
        return Err(Error::FamilyMismatch("different C-parts".into()));
    }
    let index: Vec<usize> = comp1
        .family
        .h_names()
        .iter()
        .map(|n| h2.iter().position(|m| m == n).unwrap())
        .chain((0..comp1.family.c.len()).map(|k| h2.len() + k))
        .collect();

    let mut far = None;
    let vertex_map: Vec<usize> = comp2
        .vertices
        .iter()
        .map(|v| {
            let proj: Vec<i64> = index.iter().map(|&k| v.coords[k]).collect();
            let (id, d) = nearest(comp1.vertices.iter(), &proj).expect("target has vertices");
            if d > 1 && far.is_none() {
                far = Some(Witness::Point { point: v.id });
            }
            id
        })
        .collect();

    let mut checks = CheckReport::new();
    checks.record("projection_within_quantum", far);
    let rest = check_map(comp2, comp1, &vertex_map);
    checks.checks.extend(rest.checks);
    Ok(DominationMap {
        source: comp2.label(),
        target: comp1.label(),
        vertex_map,
        checks,
    })
}

/// Exhaustive search for a domination map `a → b`.
///
/// Core vertices follow the samples; each remainder vertex of `a` is
/// tried against every remainder vertex of `b`, since a remainder vertex
/// sent into the core always fails `remainder_to_remainder`. Returns the
/// first candidate passing every check, together with all candidates
/// rejected before it.
pub fn attempt_domination(a: &Compactification, b: &Compactification) -> Result<DominationAttempt> {
    require_same_sample(a, b)?;
    let ra = a.remainder_ids();
    let rb = b.remainder_ids();
    for size in [ra.len(), rb.len()] {
        if size > MAX_SEARCH_REMAINDER {
            return Err(Error::RemainderTooLarge {
                size,
                limit: MAX_SEARCH_REMAINDER,
            });
        }
    }
    let mut base = vec![usize::MAX; a.len()];
    for (s, &v) in a.sample_map.iter().enumerate() {
        base[v] = base[v].min(b.sample_map[s]);
    }

    let mut rejected = Vec::new();
    if !ra.is_empty() && rb.is_empty() {
        return Ok(DominationAttempt {
            found: None,
            rejected,
        });
    }
    let mut choice = vec![0usize; ra.len()];
    loop {
        let mut map = base.clone();
        for (k, &v) in ra.iter().enumerate() {
            map[v] = rb[choice[k]];
        }
        let checks = check_map(a, b, &map);
        if checks.passed() {
            return Ok(DominationAttempt {
                found: Some(DominationMap {
                    source: a.label(),
                    target: b.label(),
                    vertex_map: map,
                    checks,
                }),
                rejected,
            });
        }
        rejected.push(RejectedCandidate {
            assignment: ra.iter().map(|&v| (v, map[v])).collect(),
            failed: checks
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone())
                .collect(),
        });
        // Next assignment in odometer order.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(DominationAttempt {
                    found: None,
                    rejected,
                });
            }
            choice[pos] += 1;
            if choice[pos] < rb.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
