//! The Misner strip `{(t, θ) : 0 < t ≤ 1, θ ∈ S¹}` with metric
//! `g = 2 dθ dt + t dθ²`, time-oriented toward decreasing `t`.
//!
//! Null directions solve `dθ (2 dt + t dθ) = 0`: the lines `θ = const`
//! and the curves `dt/dθ = −t/2`. Future causal vectors lie between them,
//! so `q` is reachable from `p` iff `t_q ≤ t_p · exp(−δ/2)` with
//! `δ = (θ_q − θ_p) mod 2π`; extra windings only shrink the bound.

use std::f64::consts::{PI, TAU};

use super::catalog::{bump_part, linspace, shell_levels};
use super::family::{unknown, Monotone, ScalarFunction};
use super::{Point, Sample, SampledSpace, TailThread};
use crate::error::Result;

const CORE_DEPTH: usize = 4;
const TAIL_STEP: f64 = 4.0;

#[derive(Debug, Clone, Copy, Default)]
pub struct MisnerStrip;

fn lambda(p: &Point) -> f64 {
    -p.0[0].log2()
}

/// Angular offset `(b − a) mod 2π` in `[0, 2π)`.
pub fn angle_offset(a: f64, b: f64) -> f64 {
    let d = (b - a).rem_euclid(TAU);
    if d >= TAU {
        0.0
    } else {
        d
    }
}

/// Closed-form causal relation.
pub fn causal_le(p: &Point, q: &Point) -> bool {
    let (tp, ap) = (p.0[0], p.0[1]);
    let (tq, aq) = (q.0[0], q.0[1]);
    tq <= tp * (-angle_offset(ap, aq) / 2.0).exp()
}

fn rk4_factor(h: f64) -> f64 {
    // One RK4 step of dT/dθ = −T/2 multiplies T by this polynomial in h.
    let k = -h / 2.0;
    1.0 + k + k * k / 2.0 + k * k * k / 6.0 + k * k * k * k / 24.0
}

/// Frontier of the future of `(t0, 0)` sampled on the angular grid
/// `2πj/cells`, `j = 0..cells`, by integrating the null curve
/// `dT/dθ = −T/2` with `substeps` RK4 steps per cell.
pub fn sweep_frontier(t0: f64, cells: usize, substeps: usize) -> Vec<f64> {
    let factor = rk4_factor(TAU / (cells * substeps) as f64);
    let mut out = Vec::with_capacity(cells);
    let mut t = t0;
    for _ in 0..cells {
        out.push(t);
        for _ in 0..substeps {
            t *= factor;
        }
    }
    out
}

/// Reachability matrix on a grid of `ts × cells` points, computed by
/// sweeping the null frontier from every source. Points are indexed
/// `i * cells + j` with `θ_j = 2πj/cells`.
pub fn sweep_reachability(ts: &[f64], cells: usize, substeps: usize) -> Vec<Vec<bool>> {
    let n = ts.len() * cells;
    let mut out = vec![vec![false; n]; n];
    for (i, &tp) in ts.iter().enumerate() {
        let frontier = sweep_frontier(tp, cells, substeps);
        for jp in 0..cells {
            let row = &mut out[i * cells + jp];
            for (k, &tq) in ts.iter().enumerate() {
                for jq in 0..cells {
                    let offset = (jq + cells - jp) % cells;
                    row[k * cells + jq] = tq <= frontier[offset];
                }
            }
        }
    }
    out
}

/// Time function `1 − t`, isotone because the future lowers `t`.
fn time_function() -> ScalarFunction {
    ScalarFunction::new("time", Monotone::Isotone, |p| 1.0 - p.0[0])
}

/// Saw function centred at angle `phi` with ramp width `eta`.
///
/// `F = −ln t − w(d) + π` with `d = (θ − φ) mod 2π`, where `w` climbs
/// from `η/2` to `π` with slope `1/2` and drops back steeply over the
/// first `η` radians. Along the slanted null curves `−ln t` grows at
/// rate `1/2`, so `F` never decreases along a causal curve; far from the
/// drop, `F` is constant along the null curve through a point, which
/// makes the level sets of the saws trace the future cone boundary.
fn saw(name: String, phi: f64, eta: f64) -> ScalarFunction {
    ScalarFunction::new(name, Monotone::Isotone, move |p| {
        let (t, theta) = (p.0[0], p.0[1]);
        let d = angle_offset(phi, theta);
        let w = if d >= eta {
            d / 2.0
        } else {
            PI + (eta / 2.0 - PI) * d / eta
        };
        let f = -t.ln() - w + PI;
        1.0 - (-f / 2.0).exp()
    })
}

fn parse_saw(name: &str) -> Option<(usize, usize)> {
    let (j, n) = name.strip_prefix("saw:")?.split_once('/')?;
    let (j, n) = (j.parse().ok()?, n.parse().ok()?);
    (n > 0 && j < n).then_some((j, n))
}

fn saw_at(j: usize, n: usize) -> ScalarFunction {
    let cell = TAU / n as f64;
    saw(
        format!("saw:{j}/{n}"),
        j as f64 * cell - cell / 2.0,
        cell / 4.0,
    )
}

impl SampledSpace for MisnerStrip {
    fn name(&self) -> &str {
        "misner-strip"
    }

    fn dim(&self) -> usize {
        2
    }

    fn ends(&self) -> usize {
        1
    }

    fn exhaustion(&self, p: &Point) -> f64 {
        lambda(p)
    }

    fn core_depth(&self, _resolution: usize) -> usize {
        CORE_DEPTH
    }

    /// `resolution × resolution` core grid, uniform in `λ = −log₂ t` and
    /// in angle, with one tail thread per grid angle.
    fn sample(&self, resolution: usize, tail_depth: usize) -> Sample {
        let angles: Vec<f64> = (0..resolution)
            .map(|j| TAU * j as f64 / resolution as f64)
            .collect();
        let levels = linspace(0.0, CORE_DEPTH as f64, resolution);
        let mut core = Vec::with_capacity(resolution * resolution);
        for &l in &levels {
            for &a in &angles {
                core.push(Point(vec![(-l).exp2(), a]));
            }
        }
        let shells = shell_levels(CORE_DEPTH, TAIL_STEP, tail_depth);
        let tails = angles
            .iter()
            .enumerate()
            .map(|(thread, &a)| TailThread {
                end: 0,
                thread,
                shells: shells
                    .iter()
                    .map(|&l| Point(vec![(-l).exp2(), a]))
                    .collect(),
            })
            .collect();
        Sample { core, tails }
    }

    fn relation(&self, p: &Point, q: &Point) -> bool {
        causal_le(p, q)
    }

    fn function(&self, name: &str) -> Result<ScalarFunction> {
        if name == "time" {
            return Ok(time_function());
        }
        match parse_saw(name) {
            Some((j, n)) => Ok(saw_at(j, n)),
            None => Err(unknown(self.name(), name)),
        }
    }

    /// The time function and one saw per grid angle.
    fn default_h(&self, resolution: usize) -> Result<Vec<ScalarFunction>> {
        let n = resolution.max(1);
        Ok(std::iter::once(time_function())
            .chain((0..n).map(|j| saw_at(j, n)))
            .collect())
    }

    fn c_part(&self, _resolution: usize, tail_depth: usize) -> Vec<ScalarFunction> {
        bump_part(CORE_DEPTH, tail_depth, lambda)
    }
}
