use rayon::prelude::*;

use super::{tail_window, Compactification};
use crate::error::Result;
use crate::relation::{transitive_reflexive_closure, PreorderGraph};
use crate::report::{CheckReport, Witness};
use crate::sampled::{PairSampling, SampledSpace};

/// Real separations below this are treated as no separation at all.
const SEPARATION_FLOOR: f64 = 1e-6;

fn max_excess(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Compares the relation oracle with the induced preorder on pairs of
/// core samples.
///
/// A pair is a violation when the two disagree, except when the relation
/// fails, the induced preorder relates the pair, and some `H`-coordinate
/// of `p` does exceed that of `q`: the family separates the pair but by
/// less than one quantum, so such pairs are counted as `unresolved`.
/// Passes iff the violation rate is at most `max_rate`.
pub fn verify_preorder_embedding(
    space: &dyn SampledSpace,
    comp: &Compactification,
    sampling: &PairSampling,
    max_rate: f64,
) -> CheckReport {
    let core = &comp.sample.core;
    let h = &comp.family.h;
    let values: Vec<Vec<f64>> = core
        .par_iter()
        .map(|p| h.iter().map(|f| f.eval(p)).collect())
        .collect();
    let pairs = sampling.pairs(core.len());
    let outcome: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let related = space.relation(&core[i], &core[j]);
            let induced = comp.induced.le(comp.sample_map[i], comp.sample_map[j]);
            if related == induced {
                (false, false)
            } else if !related && max_excess(&values[i], &values[j]) > SEPARATION_FLOOR {
                (false, true)
            } else {
                (true, false)
            }
        })
        .collect();
    let violations = outcome.iter().filter(|o| o.0).count();
    let unresolved = outcome.iter().filter(|o| o.1).count();
    let rate = if pairs.is_empty() {
        0.0
    } else {
        violations as f64 / pairs.len() as f64
    };
    let mut r = CheckReport::new();
    r.metric("embedding_pairs", pairs.len() as f64)
        .metric("embedding_violations", violations as f64)
        .metric("embedding_unresolved", unresolved as f64)
        .metric("embedding_violation_rate", rate);
    let first = pairs
        .iter()
        .zip(&outcome)
        .find(|(_, o)| o.0)
        .map(|(&(left, right), _)| Witness::Pair { left, right });
    if rate <= max_rate {
        r.pass("preorder_embedding");
    } else {
        r.fail("preorder_embedding", first.expect("a violation exists"));
    }
    r
}

/// The induced preorder restricted to the remainder is an order.
pub fn remainder_is_ordered(comp: &Compactification) -> Result<CheckReport> {
    comp.require_complete()?;
    let rem = comp.remainder_ids();
    let sub = comp.induced.restrict(&rem);
    let mut r = CheckReport::new();
    r.metric("remainder_vertices", rem.len() as f64);
    r.record(
        "remainder_ordered",
        sub.antisymmetry_witness().map(|(a, b)| Witness::Pair {
            left: rem[a],
            right: rem[b],
        }),
    );
    Ok(r)
}

/// Least relation on vertices containing the sampled relation between core
/// vertices and the diagonal, closed under transitivity and under tail
/// limits: `u ≤ r` when the representative of `u` lies below every deep
/// shell of some thread converging to `r`, `r ≤ u` symmetrically, and
/// `r ≤ r'` when two threads are related shell by shell. Reports whether
/// it equals the induced preorder and lists the excess pairs.
pub fn smallest_closed_preorder_diagnostic(
    space: &dyn SampledSpace,
    comp: &Compactification,
) -> CheckReport {
    let n = comp.len();
    let reps = comp.representatives();
    let core = &comp.sample.core;
    let depth = comp.params.tail_depth;
    let core_ids: Vec<usize> = comp.core_ids().collect();
    let (reps_ref, ids_ref) = (&reps, &core_ids);

    let mut seed: Vec<(usize, usize)> = core_ids
        .par_iter()
        .flat_map_iter(|&u| {
            let pu = &core[reps_ref[u].expect("core vertex has a sample")];
            ids_ref
                .iter()
                .filter(move |&&v| space.relation(pu, &core[reps_ref[v].unwrap()]))
                .map(move |&v| (u, v))
                .collect::<Vec<_>>()
        })
        .collect();

    let threads: Vec<(usize, &[crate::sampled::Point])> = comp
        .tails
        .iter()
        .zip(&comp.sample.tails)
        .filter_map(|(rec, t)| {
            let v = rec.vertex.filter(|&v| comp.is_remainder(v))?;
            Some((v, tail_window(&t.shells, depth)))
        })
        .collect();
    for &(r, shells) in &threads {
        for &u in &core_ids {
            let pu = &core[reps[u].unwrap()];
            if shells.iter().all(|s| space.relation(pu, s)) {
                seed.push((u, r));
            }
            if shells.iter().all(|s| space.relation(s, pu)) {
                seed.push((r, u));
            }
        }
        for &(r2, shells2) in &threads {
            if shells
                .iter()
                .zip(shells2)
                .all(|(a, b)| space.relation(a, b))
            {
                seed.push((r, r2));
            }
        }
    }
    let smallest: PreorderGraph =
        transitive_reflexive_closure(seed, n).expect("vertex ids are in range");
    let excess = comp.induced.excess_over(&smallest);
    let missing = smallest.excess_over(&comp.induced);

    let mut r = CheckReport::new();
    r.metric("smallest_pairs", smallest.pair_count() as f64)
        .metric("induced_pairs", comp.induced.pair_count() as f64)
        .metric("excess_pairs", excess.len() as f64)
        .metric("missing_pairs", missing.len() as f64);
    r.record(
        "induced_is_smallest_closed",
        excess
            .first()
            .or(missing.first())
            .map(|&(left, right)| Witness::Pair { left, right }),
    );
    r
}
