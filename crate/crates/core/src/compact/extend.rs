use rayon::prelude::*;
use serde::Serialize;

use super::{diameter, extrapolate, tail_window, Compactification};
use crate::error::Result;
use crate::sampled::{Monotone, PairSampling, SampledSpace, ScalarFunction};

/// Outcome of trying to extend a function to the remainder.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Extension {
    /// Limit value per remainder vertex, by increasing vertex id.
    Extendable { values: Vec<(usize, f64)> },
    /// Not tagged isotone, or decreases on a sampled related pair.
    NotIsotone { witness: Option<(usize, usize)> },
    NotCauchy {
        end: usize,
        thread: usize,
        diameter: f64,
    },
    /// Threads converging to the same vertex give different limits.
    LimitsDisagree { vertex: usize },
    /// The limits break isotonicity on the induced preorder.
    ExtensionNotIsotone { left: usize, right: usize },
}

impl Extension {
    pub fn is_extendable(&self) -> bool {
        matches!(self, Extension::Extendable { .. })
    }
}

/// Whether an isotone `f` extends continuously and isotonically to the
/// compactification.
///
/// Continuity: along every tail thread the values of `f` on the last
/// `tail_depth` shells lie within `ε_cauchy`, and threads meeting at one
/// remainder vertex agree on the limit. Isotonicity: with each core
/// vertex carrying the range of `f` over its samples, every induced pair
/// `u ≤ v` has `max f(u) ≤ min f(v) + ε_cauchy`.
pub fn extendability(
    space: &dyn SampledSpace,
    comp: &Compactification,
    f: &ScalarFunction,
) -> Result<Extension> {
    comp.require_complete()?;
    let eps = comp.params.eps_cauchy;
    let core = &comp.sample.core;
    if f.monotone() != Monotone::Isotone {
        return Ok(Extension::NotIsotone { witness: None });
    }
    let values: Vec<f64> = core.par_iter().map(|p| f.eval(p)).collect();
    let pairs = PairSampling::default().pairs(core.len());
    let bad = pairs
        .par_iter()
        .find_first(|&&(i, j)| values[i] > values[j] + 1e-9 && space.relation(&core[i], &core[j]));
    if let Some(&(i, j)) = bad {
        return Ok(Extension::NotIsotone {
            witness: Some((i, j)),
        });
    }

    let n = comp.len();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for (s, &v) in comp.sample_map.iter().enumerate() {
        lo[v] = lo[v].min(values[s]);
        hi[v] = hi[v].max(values[s]);
    }

    let mut limit: Vec<Option<f64>> = vec![None; n];
    for (rec, thread) in comp.tails.iter().zip(&comp.sample.tails) {
        let seq: Vec<Vec<f64>> = thread.shells.iter().map(|p| vec![f.eval(p)]).collect();
        let d = diameter(tail_window(&seq, comp.params.tail_depth));
        if d > eps {
            return Ok(Extension::NotCauchy {
                end: rec.end,
                thread: rec.thread,
                diameter: d,
            });
        }
        let value = extrapolate(&seq)[0];
        let v = rec.vertex.expect("complete build");
        if !comp.is_remainder(v) {
            // Absorbed into the image of E: the limit must match there.
            if value < lo[v] - eps || value > hi[v] + eps {
                return Ok(Extension::LimitsDisagree { vertex: v });
            }
            continue;
        }
        match limit[v] {
            Some(prev) if (prev - value).abs() > eps => {
                return Ok(Extension::LimitsDisagree { vertex: v })
            }
            Some(_) => {}
            None => limit[v] = Some(value),
        }
    }
    for v in comp.remainder_ids() {
        if let Some(x) = limit[v] {
            lo[v] = x;
            hi[v] = x;
        }
    }

    let broken = (0..n).into_par_iter().find_map_first(|u| {
        comp.induced
            .row(u)
            .ones()
            .find(|&v| hi[u] > lo[v] + eps)
            .map(|v| (u, v))
    });
    if let Some((left, right)) = broken {
        return Ok(Extension::ExtensionNotIsotone { left, right });
    }
    Ok(Extension::Extendable {
        values: comp
            .remainder_ids()
            .into_iter()
            .filter_map(|v| limit[v].map(|x| (v, x)))
            .collect(),
    })
}

/// Names of the candidates in `i(H)`, in candidate order.
pub fn i_closure(
    space: &dyn SampledSpace,
    comp: &Compactification,
    candidates: &[ScalarFunction],
) -> Result<Vec<String>> {
    let mut kept = Vec::new();
    for f in candidates {
        if extendability(space, comp, f)?.is_extendable() {
            kept.push(f.name().to_string());
        }
    }
    Ok(kept)
}
