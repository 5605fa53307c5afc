//! Generators for non-compact preordered spaces and the scalar function
//! families used to compactify them.
//!
//! Every catalog space comes with a continuous exhaustion function `λ`
//! whose sublevel sets `K_k = {λ ≤ k}` are the compact cores. A sample
//! holds a core grid inside `K_m` plus, for each end, one or more tail
//! threads: sequences of points marching out through deeper cores.

mod catalog;
mod family;
pub mod misner;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use catalog::{
    catalog, ClosedInterval, HalfOpenInterval, MirrorRay, NatDiscrete, RealLineMirror,
    CATALOG_NAMES,
};
pub use family::{
    build_family, bump, FamilySpec, FunctionFamily, Monotone, ScalarFunction, TailClass,
};
pub use misner::MisnerStrip;

use crate::error::Result;
use crate::report::{CheckReport, Witness};

/// A point of a sampled space in its parameter coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn scalar(x: f64) -> Self {
        Point(vec![x])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }
}

/// One sequence of points leaving every compact core along an end.
#[derive(Debug, Clone, PartialEq)]
pub struct TailThread {
    pub end: usize,
    pub thread: usize,
    pub shells: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub core: Vec<Point>,
    pub tails: Vec<TailThread>,
}

/// Maps a space onto its quotient by `~`, used by the Nachbin pipeline.
pub struct QuotientGenerator {
    pub space: Box<dyn SampledSpace>,
    pub project: Box<dyn Fn(&Point) -> Point + Send + Sync>,
    /// Resolution at which the quotient's core sample is exactly the
    /// projection of the original core sample.
    pub resolution: fn(usize) -> usize,
}

pub trait SampledSpace: Send + Sync {
    fn name(&self) -> &str;

    fn dim(&self) -> usize;

    /// Number of ends of the exhaustion; zero for compact spaces.
    fn ends(&self) -> usize;

    /// Continuous exhaustion function; `K_k = {λ ≤ k}`.
    fn exhaustion(&self, p: &Point) -> f64;

    /// Least `k` with `p ∈ K_k`.
    fn exhaustion_level(&self, p: &Point) -> usize {
        let l = self.exhaustion(p);
        if l <= 0.0 {
            0
        } else {
            (l - 1e-9).ceil().max(0.0) as usize
        }
    }

    /// Index `m` of the compact core `K_m` holding the core grid.
    fn core_depth(&self, resolution: usize) -> usize;

    /// `resolution` core points plus tail threads of `2 * tail_depth`
    /// shells per thread.
    fn sample(&self, resolution: usize, tail_depth: usize) -> Sample;

    /// The preorder oracle `p ≤ q`.
    fn relation(&self, p: &Point, q: &Point) -> bool;

    /// Named member of the space's function library.
    fn function(&self, name: &str) -> Result<ScalarFunction>;

    /// Default isotone family `H` representing the preorder.
    fn default_h(&self, resolution: usize) -> Result<Vec<ScalarFunction>>;

    /// Default `C`-part: bump functions that vary just outside the core.
    fn c_part(&self, resolution: usize, tail_depth: usize) -> Vec<ScalarFunction>;

    /// Selectable `H` built from the `C`, `C⁻` or `C⁺` classes.
    fn bump_h(&self, class: TailClassSelector, resolution: usize) -> Result<Vec<ScalarFunction>> {
        let _ = resolution;
        Err(crate::Error::UnsupportedFamily {
            space: self.name().to_string(),
            family: class.as_str().to_string(),
        })
    }

    fn quotient(&self) -> Option<QuotientGenerator> {
        None
    }
}

/// Which tail class a bump-built `H` is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClassSelector {
    C,
    CMinus,
    CPlus,
}

impl TailClassSelector {
    pub fn as_str(self) -> &'static str {
        match self {
            TailClassSelector::C => "C",
            TailClassSelector::CMinus => "Cminus",
            TailClassSelector::CPlus => "Cplus",
        }
    }
}

/// Tolerances and budgets for checks that sample pairs of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSampling {
    pub max_pairs: usize,
    pub seed: u64,
}

impl Default for PairSampling {
    fn default() -> Self {
        Self {
            max_pairs: 1_000_000,
            seed: 0,
        }
    }
}

impl PairSampling {
    /// All ordered pairs `i ≠ j` when they fit the budget, otherwise a
    /// seeded uniform draw of `max_pairs` of them.
    pub fn pairs(&self, n: usize) -> Vec<(usize, usize)> {
        let total = n.saturating_mul(n.saturating_sub(1));
        if total <= self.max_pairs {
            let mut out = Vec::with_capacity(total);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push((i, j));
                    }
                }
            }
            return out;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        if total <= 4 * self.max_pairs {
            let mut picked: Vec<usize> = sample_indices(&mut rng, total, self.max_pairs).into_vec();
            picked.sort_unstable();
            picked
                .into_iter()
                .map(|k| {
                    let i = k / (n - 1);
                    let r = k % (n - 1);
                    (i, if r >= i { r + 1 } else { r })
                })
                .collect()
        } else {
            (0..self.max_pairs)
                .map(|_| {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n - 1);
                    if j >= i {
                        j += 1;
                    }
                    (i, j)
                })
                .collect()
        }
    }
}

/// Options for [`validate_family`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    pub tail_depth: usize,
    pub eps_fn: f64,
    /// Largest tolerated fraction of sampled pairs where the family and
    /// the relation disagree.
    pub max_failure_rate: f64,
    pub sampling: PairSampling,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            tail_depth: 4,
            eps_fn: 1e-6,
            max_failure_rate: 0.01,
            sampling: PairSampling::default(),
        }
    }
}

/// Checks the family's tags on a sample and that the `H`-part represents
/// the preorder: `p ≤ q ⇔ ∀h: h(p) ≤ h(q) + ε`.
pub fn validate_family(
    space: &dyn SampledSpace,
    family: &FunctionFamily,
    resolution: usize,
    opts: &ValidateOptions,
) -> CheckReport {
    let sample = space.sample(resolution, opts.tail_depth);
    let eps = opts.eps_fn;
    let mut report = CheckReport::new();

    let untagged_h = family.h.iter().find(|f| f.monotone() != Monotone::Isotone);
    report.record(
        "h_part_isotone_tagged",
        untagged_h.map(|f| Witness::Note {
            note: f.name().to_string(),
        }),
    );
    let untagged_c = family.c.iter().find(|f| f.tail_class().is_none());
    report.record(
        "c_part_tail_tagged",
        untagged_c.map(|f| Witness::Note {
            note: f.name().to_string(),
        }),
    );
    report.record(
        "h_part_nonempty",
        family.h.is_empty().then(|| Witness::Note {
            note: "empty H".into(),
        }),
    );

    // Constant-tail tags on every sampled point at or beyond the level.
    let all_points: Vec<&Point> = sample
        .core
        .iter()
        .chain(sample.tails.iter().flat_map(|t| t.shells.iter()))
        .collect();
    let mut tail_failure = None;
    'outer: for f in family.members() {
        if let Some(tc) = f.tail_class() {
            for p in &all_points {
                if space.exhaustion_level(p) >= tc.level && (f.eval(p) - tc.value).abs() > eps {
                    tail_failure = Some(Witness::Note {
                        note: format!("{} at {:?}", f.name(), p.0),
                    });
                    break 'outer;
                }
            }
        }
    }
    report.record("tail_tags", tail_failure);

    let values: Vec<Vec<f64>> = family
        .h
        .iter()
        .map(|f| sample.core.iter().map(|p| f.eval(p)).collect())
        .collect();
    let pairs = opts.sampling.pairs(sample.core.len());
    let mut isotone_failure = None;
    let mut failures = 0usize;
    let mut first_failure = None;
    for &(i, j) in &pairs {
        let related = space.relation(&sample.core[i], &sample.core[j]);
        if related && isotone_failure.is_none() {
            if let Some(k) = values.iter().position(|v| v[i] > v[j] + eps) {
                isotone_failure = Some(Witness::Note {
                    note: format!("{} on pair ({i}, {j})", family.h[k].name()),
                });
            }
        }
        let represented = values.iter().all(|v| v[i] <= v[j] + eps);
        if related != represented {
            failures += 1;
            first_failure.get_or_insert((i, j));
        }
    }
    report.record("isotone_tags", isotone_failure);
    let rate = if pairs.is_empty() {
        0.0
    } else {
        failures as f64 / pairs.len() as f64
    };
    report.metric("representation_pairs", pairs.len() as f64);
    report.metric("representation_failures", failures as f64);
    report.metric("representation_pass_rate", 1.0 - rate);
    let witness = first_failure.map(|(left, right)| Witness::Pair { left, right });
    if rate <= opts.max_failure_rate {
        report.pass("representation");
    } else {
        report.fail(
            "representation",
            witness.unwrap_or(Witness::Note {
                note: "failure rate".into(),
            }),
        );
    }
    report
}
