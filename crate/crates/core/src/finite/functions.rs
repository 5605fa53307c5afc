use fixedbitset::FixedBitSet;

use super::space::FinitePreorderedSpace;
use super::topology::FiniteTopology;
use crate::error::{Error, Result};
use crate::relation::{function_preorder, intersect_graphs, PreorderGraph};
use crate::report::{CheckReport, Witness};

/// Default cap on the number of candidate functions an enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// Function into the chain `{0, 1/L, …, 1}`; `values[i]` is the numerator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainFunction {
    pub levels: u32,
    pub values: Vec<u32>,
}

impl ChainFunction {
    pub fn constant(n: usize, levels: u32, value: u32) -> Self {
        Self {
            levels,
            values: vec![value; n],
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i] as f64 / self.levels as f64
    }

    pub fn to_reals(&self) -> Vec<f64> {
        (0..self.values.len()).map(|i| self.value(i)).collect()
    }
}

pub fn is_isotone(g: &PreorderGraph, values: &[f64]) -> bool {
    g.pairs().all(|(i, j)| values[i] <= values[j])
}

/// Literal continuity into `[0,1]`: the preimage of every open ray
/// `(a, 1]` and `[0, a)` is open. Thresholds at the attained values are
/// enough because the image is finite.
pub fn is_continuous(t: &FiniteTopology, values: &[f64]) -> bool {
    let n = t.n();
    values.iter().all(|&v| {
        let mut above = FixedBitSet::with_capacity(n);
        let mut below = FixedBitSet::with_capacity(n);
        for (i, &x) in values.iter().enumerate() {
            above.set(i, x > v);
            below.set(i, x < v);
        }
        t.is_open(&above) && t.is_open(&below)
    })
}

/// All continuous isotone chain functions with `levels + 1` values, sorted.
///
/// Continuous functions on a finite space are constant on connected
/// components, so the search runs over `(levels + 1)^components`
/// assignments and errors when that exceeds `budget`.
pub fn enumerate_isotone_functions(
    sp: &FinitePreorderedSpace,
    levels: u32,
    budget: u128,
) -> Result<Vec<ChainFunction>> {
    let levels = levels.max(1);
    let n = sp.n();
    let comp = sp.topology().components();
    let k = comp.iter().copied().max().map_or(0, |m| m + 1);
    let base = levels as u128 + 1;
    let needed = base.checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let g = sp.preorder();
    let mut out = Vec::new();
    let mut assign = vec![0u32; k];
    loop {
        let values: Vec<u32> = (0..n).map(|i| assign[comp[i]]).collect();
        if g.pairs().all(|(i, j)| values[i] <= values[j]) {
            out.push(ChainFunction { levels, values });
        }
        // Odometer increment over component levels.
        let mut pos = 0;
        loop {
            if pos == k {
                out.sort();
                return Ok(out);
            }
            if assign[pos] < levels {
                assign[pos] += 1;
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// Result of a monotone Urysohn construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    Separated(ChainFunction),
    /// A point of `B` lies in every increasing clopen superset of `A`.
    Inseparable {
        witness: usize,
    },
}

fn grow_clopen(
    t: &FiniteTopology,
    g: &PreorderGraph,
    seed: &FixedBitSet,
    upward: bool,
) -> FixedBitSet {
    let comp = t.components();
    let mut s = seed.clone();
    loop {
        let mut next = s.clone();
        for x in s.ones() {
            if upward {
                next.union_with(g.row(x));
            } else {
                next.union_with(&g.column(x));
            }
        }
        let hit: Vec<usize> = next.ones().map(|x| comp[x]).collect();
        for (y, &c) in comp.iter().enumerate() {
            if hit.contains(&c) {
                next.insert(y);
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Continuous isotone `f` with `f = 1` on `A` and `f = 0` on `B`.
///
/// `A` must be closed and increasing, `B` closed and decreasing, and the
/// two disjoint. The returned ladder is `1` on the smallest increasing
/// clopen set around `A`, `0` on the smallest decreasing clopen set around
/// `B`, and the middle level in between. An empty `A` gives the constant 0
/// and an empty `B` the constant 1.
pub fn monotone_separation(
    sp: &FinitePreorderedSpace,
    a: &FixedBitSet,
    b: &FixedBitSet,
    levels: u32,
) -> Result<Separation> {
    let n = sp.n();
    let t = sp.topology();
    let g = sp.preorder();
    let levels = levels.max(1);
    let violation = |reason: &str, witness: usize| Error::Precondition {
        reason: reason.to_string(),
        witness,
    };
    for (set, name) in [(a, "A"), (b, "B")] {
        if set.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: set.len(),
            });
        }
        if let Some(x) = t.set_closure(set).difference(set).next() {
            return Err(violation(&format!("{name} is not closed"), x));
        }
    }
    for x in a.ones() {
        if let Some(y) = g.row(x).difference(a).next() {
            return Err(violation("A is not increasing", y));
        }
    }
    for x in b.ones() {
        if let Some(y) = g.column(x).difference(b).next() {
            return Err(violation("B is not decreasing", y));
        }
    }
    if let Some(x) = a.intersection(b).next() {
        return Err(violation("A and B intersect", x));
    }

    if a.is_clear() {
        return Ok(Separation::Separated(ChainFunction::constant(n, levels, 0)));
    }
    if b.is_clear() {
        return Ok(Separation::Separated(ChainFunction::constant(
            n, levels, levels,
        )));
    }
    let upper = grow_clopen(t, g, a, true);
    if let Some(witness) = upper.intersection(b).next() {
        return Ok(Separation::Inseparable { witness });
    }
    let lower = grow_clopen(t, g, b, false);
    let mid = if levels >= 2 { levels / 2 } else { 0 };
    let values = (0..n)
        .map(|i| {
            if upper.contains(i) {
                levels
            } else if lower.contains(i) {
                0
            } else {
                mid
            }
        })
        .collect();
    Ok(Separation::Separated(ChainFunction { levels, values }))
}

/// Checks `G(≤) = ⋂_f G_f` for real-valued functions on the points.
pub fn representation_check(sp: &FinitePreorderedSpace, fns: &[Vec<f64>]) -> Result<CheckReport> {
    let n = sp.n();
    let mut graphs = vec![PreorderGraph::full(n)];
    for f in fns {
        if f.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: f.len(),
            });
        }
        graphs.push(function_preorder(f)?);
    }
    let rep = intersect_graphs(&graphs)?;
    let mut r = CheckReport::new();
    r.record(
        "represented",
        rep.first_difference(sp.preorder())
            .map(|(left, right)| Witness::Pair { left, right }),
    );
    Ok(r)
}
