//! Numeric `H`-compactifications.
//!
//! A build embeds a sample of the space into the cube `[0,1]^(H ∪ C)`,
//! quantizes every coordinate to an integer multiple of `ε_q`, and adds
//! one remainder vertex per distinct limit of the tail threads. The
//! induced preorder compares the quantized `H`-coordinates only, so it
//! is reflexive and transitive by construction.

mod domination;
mod export;
mod extend;
mod nachbin;
mod verify;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

pub use domination::{
    attempt_domination, dominate, DominationAttempt, DominationMap, RejectedCandidate,
};
pub use export::{preorder_dot, relation_hex, vertices_csv};
pub use extend::{extendability, i_closure, Extension};
pub use nachbin::nachbin_pipeline;
pub use verify::{
    remainder_is_ordered, smallest_closed_preorder_diagnostic, verify_preorder_embedding,
};

use crate::error::{Error, Result};
use crate::relation::PreorderGraph;
use crate::sampled::{FunctionFamily, Point, Sample, SampledSpace};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BuildParams {
    pub resolution: usize,
    pub tail_depth: usize,
    pub eps_q: f64,
    pub eps_cauchy: f64,
}

impl Default for BuildParams {
    fn default() -> Self {
        Self {
            resolution: 64,
            tail_depth: 4,
            eps_q: 1e-3,
            eps_cauchy: 1e-2,
        }
    }
}

impl BuildParams {
    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn quantize(&self, v: f64) -> i64 {
        (v / self.eps_q).round() as i64
    }

    pub fn quantize_all(&self, v: &[f64]) -> Vec<i64> {
        v.iter().map(|&x| self.quantize(x)).collect()
    }
}

/// Family values on every sampled point, before quantization.
#[derive(Debug, Clone)]
pub struct RawCloud {
    pub space: String,
    pub family: FunctionFamily,
    pub params: BuildParams,
    pub sample: Sample,
    pub core: Vec<Vec<f64>>,
    /// Indexed like `sample.tails`, then by shell.
    pub tails: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Core,
    Remainder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    /// Coordinates in units of `ε_q`, `H`-part first.
    pub coords: Vec<i64>,
}

/// Outcome of the Cauchy test on one tail thread.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailRecord {
    pub end: usize,
    pub thread: usize,
    /// Sup-norm diameter of the images of the last `tail_depth` shells.
    pub diameter: f64,
    pub cauchy: bool,
    /// Vertex the thread converges to; a core vertex when the limit lies
    /// within one quantum of the image of `E`.
    pub vertex: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Compactification {
    pub space: String,
    pub family: FunctionFamily,
    pub params: BuildParams,
    pub sample: Sample,
    pub vertices: Vec<Vertex>,
    /// Core sample index to core vertex id.
    pub sample_map: Vec<usize>,
    pub induced: PreorderGraph,
    /// End index to the remainder vertices its threads converge to.
    pub end_map: Vec<Vec<usize>>,
    pub tails: Vec<TailRecord>,
}

fn check_unit(name: &str, v: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if v.is_finite() && (-SLACK..=1.0 + SLACK).contains(&v) {
        Ok(v.clamp(0.0, 1.0))
    } else {
        Err(Error::OutOfCube {
            name: name.to_string(),
            value: v,
        })
    }
}

fn evaluate(family: &FunctionFamily, points: &[Point]) -> Result<Vec<Vec<f64>>> {
    points
        .par_iter()
        .map(|p| {
            family
                .members()
                .map(|f| check_unit(f.name(), f.eval(p)))
                .collect()
        })
        .collect()
}

/// Maps every sample point into the cube, `H`-coordinates first.
pub fn embed(
    space: &dyn SampledSpace,
    family: &FunctionFamily,
    params: &BuildParams,
) -> Result<RawCloud> {
    let sample = space.sample(params.resolution, params.tail_depth);
    let core = evaluate(family, &sample.core)?;
    let tails = sample
        .tails
        .iter()
        .map(|t| evaluate(family, &t.shells))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawCloud {
        space: space.name().to_string(),
        family: family.clone(),
        params: *params,
        sample,
        core,
        tails,
    })
}

/// Sup-norm diameter of a set of vectors.
pub(crate) fn diameter(points: &[Vec<f64>]) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    (0..first.len())
        .map(|k| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                    (lo.min(p[k]), hi.max(p[k]))
                });
            hi - lo
        })
        .fold(0.0, f64::max)
}

/// Aitken's Δ² extrapolation of the last three terms, falling back to the
/// last term when the sequence is not locally geometric.
pub(crate) fn aitken(x0: f64, x1: f64, x2: f64) -> f64 {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    if d1 == 0.0 || denom.abs() < 1e-15 {
        return x2;
    }
    let ratio = d2 / d1;
    if !(ratio > -1.0 && ratio < 1.0) {
        return x2;
    }
    x2 - d2 * d2 / denom
}

/// Per-coordinate limit of a convergent shell sequence.
pub(crate) fn extrapolate(shells: &[Vec<f64>]) -> Vec<f64> {
    let n = shells.len();
    let last = &shells[n - 1];
    if n < 3 {
        return last.clone();
    }
    (0..last.len())
        .map(|k| aitken(shells[n - 3][k], shells[n - 2][k], shells[n - 1][k]).clamp(0.0, 1.0))
        .collect()
}

pub(crate) fn tail_window<T>(shells: &[T], tail_depth: usize) -> &[T] {
    &shells[shells.len().saturating_sub(tail_depth)..]
}

pub(crate) fn sup_distance(a: &[i64], b: &[i64]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or(0)
}

/// Lowest-id vertex nearest to `coords` in sup-norm, with its distance.
pub(crate) fn nearest<'a>(
    vertices: impl Iterator<Item = &'a Vertex>,
    coords: &[i64],
) -> Option<(usize, i64)> {
    let mut best: Option<(usize, i64)> = None;
    for v in vertices {
        let d = sup_distance(&v.coords, coords);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((v.id, d));
        }
    }
    best
}

fn induced_preorder(vertices: &[Vertex], h_dim: usize) -> PreorderGraph {
    let n = vertices.len();
    let rows = vertices
        .par_iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for b in vertices {
                if a.coords[..h_dim]
                    .iter()
                    .zip(&b.coords[..h_dim])
                    .all(|(x, y)| x <= y)
                {
                    row.insert(b.id);
                }
            }
            row
        })
        .collect();
    PreorderGraph::from_rows_unchecked(rows)
}

/// Deduplicates quantized core images into core vertices and adds one
/// remainder vertex per distinct limit of the Cauchy tail threads.
/// Threads that fail the Cauchy test are recorded but add no vertex.
pub fn close_and_cluster(raw: RawCloud) -> Compactification {
    let p = raw.params;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut sample_map = Vec::with_capacity(raw.core.len());
    for image in &raw.core {
        let q = p.quantize_all(image);
        let id = *index.entry(q.clone()).or_insert_with(|| {
            vertices.push(Vertex {
                id: vertices.len(),
                kind: VertexKind::Core,
                coords: q,
            });
            vertices.len() - 1
        });
        sample_map.push(id);
    }
    let core_count = vertices.len();

    let mut end_map = vec![
        Vec::new();
        raw.sample
            .tails
            .iter()
            .map(|t| t.end + 1)
            .max()
            .unwrap_or(0)
    ];
    let mut tails = Vec::with_capacity(raw.tails.len());
    for (thread, images) in raw.sample.tails.iter().zip(&raw.tails) {
        let window = tail_window(images, p.tail_depth);
        let diam = diameter(window);
        let cauchy = diam <= p.eps_cauchy;
        let vertex = cauchy.then(|| {
            let limit = p.quantize_all(&extrapolate(images));
            match nearest(vertices[..core_count].iter(), &limit) {
                Some((id, d)) if d <= 1 => id,
                _ => match nearest(vertices[core_count..].iter(), &limit) {
                    Some((id, d)) if d <= 1 => id,
                    _ => {
                        vertices.push(Vertex {
                            id: vertices.len(),
                            kind: VertexKind::Remainder,
                            coords: limit,
                        });
                        vertices.len() - 1
                    }
                },
            }
        });
        if let Some(v) = vertex.filter(|&v| v >= core_count) {
            if !end_map[thread.end].contains(&v) {
                end_map[thread.end].push(v);
            }
        }
        tails.push(TailRecord {
            end: thread.end,
            thread: thread.thread,
            diameter: diam,
            cauchy,
            vertex,
        });
    }
    for ids in &mut end_map {
        ids.sort_unstable();
    }

    let induced = induced_preorder(&vertices, raw.family.h.len());
    debug_assert!(induced.is_reflexive());
    Compactification {
        space: raw.space,
        family: raw.family,
        params: p,
        sample: raw.sample,
        vertices,
        sample_map,
        induced,
        end_map,
        tails,
    }
}

/// `embed` followed by `close_and_cluster`.
pub fn compactify(
    space: &dyn SampledSpace,
    family: &FunctionFamily,
    params: &BuildParams,
) -> Result<Compactification> {
    Ok(close_and_cluster(embed(space, family, params)?))
}

impl Compactification {
    pub fn h_dim(&self) -> usize {
        self.family.h.len()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn core_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Core)
            .map(|v| v.id)
    }

    pub fn remainder_ids(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Remainder)
            .map(|v| v.id)
            .collect()
    }

    pub fn is_remainder(&self, id: usize) -> bool {
        self.vertices[id].kind == VertexKind::Remainder
    }

    pub fn is_complete(&self) -> bool {
        self.tails.iter().all(|t| t.cauchy)
    }

    /// First thread that failed the Cauchy test.
    pub fn first_divergent(&self) -> Option<&TailRecord> {
        self.tails.iter().find(|t| !t.cauchy)
    }

    pub fn require_complete(&self) -> Result<()> {
        match self.first_divergent() {
            None => Ok(()),
            Some(t) => Err(Error::Incomplete {
                end: t.end,
                thread: t.thread,
            }),
        }
    }

    /// Coordinate `k` of vertex `id` as a real number.
    pub fn coord(&self, id: usize, k: usize) -> f64 {
        self.vertices[id].coords[k] as f64 * self.params.eps_q
    }

    /// First core sample mapped to each core vertex.
    pub fn representatives(&self) -> Vec<Option<usize>> {
        let mut reps = vec![None; self.vertices.len()];
        for (s, &v) in self.sample_map.iter().enumerate() {
            reps[v].get_or_insert(s);
        }
        reps
    }

    /// Whether `v` lies below, above, or is incomparable to every core
    /// vertex other than itself.
    pub fn position_against_core(&self, v: usize) -> CorePosition {
        let others: Vec<usize> = self.core_ids().filter(|&u| u != v).collect();
        let below = others.iter().all(|&u| self.induced.le(v, u));
        let above = others.iter().all(|&u| self.induced.le(u, v));
        let apart = others
            .iter()
            .all(|&u| !self.induced.le(v, u) && !self.induced.le(u, v));
        match (below, above, apart) {
            (true, false, _) => CorePosition::Bottom,
            (false, true, _) => CorePosition::Top,
            (false, false, true) => CorePosition::Incomparable,
            _ => CorePosition::Mixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorePosition {
    Bottom,
    Top,
    Incomparable,
    Mixed,
}
