use super::family::{bump, parse_param, unknown, Monotone, ScalarFunction};
use super::misner::MisnerStrip;
use super::{Point, QuotientGenerator, Sample, SampledSpace, TailClassSelector, TailThread};
use crate::error::{Error, Result};

pub const CATALOG_NAMES: [&str; 5] = [
    "half-open-interval",
    "nat-discrete",
    "real-line-mirror",
    "misner-strip",
    "closed-interval",
];

pub fn catalog(name: &str) -> Result<Box<dyn SampledSpace>> {
    Ok(match name {
        "half-open-interval" => Box::new(HalfOpenInterval),
        "nat-discrete" => Box::new(NatDiscrete),
        "real-line-mirror" => Box::new(RealLineMirror),
        "misner-strip" => Box::new(MisnerStrip),
        "closed-interval" => Box::new(ClosedInterval),
        other => return Err(Error::UnknownSpace(other.to_string())),
    })
}

/// `n` evenly spaced values from `lo` to `hi`, both included.
pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Exhaustion values of the `2 * tail_depth` shells beyond core `K_m`.
pub(crate) fn shell_levels(m: usize, step: f64, tail_depth: usize) -> Vec<f64> {
    (1..=2 * tail_depth)
        .map(|j| m as f64 + j as f64 * step)
        .collect()
}

/// Bumps `b_k` for `k = m+1 ..= m+tail_depth`.
pub(crate) fn bump_part(
    m: usize,
    tail_depth: usize,
    exhaustion: fn(&Point) -> f64,
) -> Vec<ScalarFunction> {
    (m + 1..=m + tail_depth)
        .map(|k| bump(k, exhaustion))
        .collect()
}

fn single_thread(end: usize, shells: Vec<Point>) -> TailThread {
    TailThread {
        end,
        thread: 0,
        shells,
    }
}

/// `[0,1)` with the usual order, `K_k = [0, 1 − 2^{−k}]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfOpenInterval;

impl HalfOpenInterval {
    const CORE_DEPTH: usize = 9;

    fn lambda(p: &Point) -> f64 {
        let x = p.x();
        if x >= 1.0 {
            f64::INFINITY
        } else {
            -(1.0 - x).log2()
        }
    }
}

impl SampledSpace for HalfOpenInterval {
    fn name(&self) -> &str {
        "half-open-interval"
    }

    fn dim(&self) -> usize {
        1
    }

    fn ends(&self) -> usize {
        1
    }

    fn exhaustion(&self, p: &Point) -> f64 {
        Self::lambda(p)
    }

    fn core_depth(&self, _resolution: usize) -> usize {
        Self::CORE_DEPTH
    }

    fn sample(&self, resolution: usize, tail_depth: usize) -> Sample {
        let m = Self::CORE_DEPTH;
        let top = 1.0 - (-(m as f64)).exp2();
        let core = linspace(0.0, top, resolution)
            .into_iter()
            .map(Point::scalar)
            .collect();
        let shells = shell_levels(m, 1.0, tail_depth)
            .into_iter()
            .map(|l| Point::scalar(1.0 - (-l).exp2()))
            .collect();
        Sample {
            core,
            tails: vec![single_thread(0, shells)],
        }
    }

    fn relation(&self, p: &Point, q: &Point) -> bool {
        p.x() <= q.x()
    }

    fn function(&self, name: &str) -> Result<ScalarFunction> {
        unit_interval_function(self.name(), name, |x| (1.0 + (1.0 / (1.0 - x)).sin()) / 2.0)
    }

    fn default_h(&self, _resolution: usize) -> Result<Vec<ScalarFunction>> {
        Ok(vec![self.function("id")?])
    }

    fn c_part(&self, _resolution: usize, tail_depth: usize) -> Vec<ScalarFunction> {
        bump_part(Self::CORE_DEPTH, tail_depth, Self::lambda)
    }

    fn quotient(&self) -> Option<QuotientGenerator> {
        Some(QuotientGenerator {
            space: Box::new(HalfOpenInterval),
            project: Box::new(Point::clone),
            resolution: |r| r,
        })
    }
}

/// Library shared by the two intervals; `osc` differs per space.
fn unit_interval_function(space: &str, name: &str, osc: fn(f64) -> f64) -> Result<ScalarFunction> {
    let iso = Monotone::Isotone;
    let f = match name {
        "id" => ScalarFunction::new(name, iso, |p| p.x()),
        "sq" => ScalarFunction::new(name, iso, |p| p.x() * p.x()),
        "sqrt" => ScalarFunction::new(name, iso, |p| p.x().max(0.0).sqrt()),
        "exp3" => ScalarFunction::new(name, iso, |p| {
            ((3.0 * p.x()).exp() - 1.0) / (3f64.exp() - 1.0)
        }),
        "osc" => ScalarFunction::new(name, Monotone::None, move |p| osc(p.x())),
        _ => {
            if let Some(a) = parse_param(name, "pow").filter(|&a| a > 0.0) {
                ScalarFunction::new(name, iso, move |p| p.x().max(0.0).powf(a))
            } else if let Some(a) = parse_param(name, "smooth").filter(|&a| a > 0.0) {
                let norm = 1.0 - (-a).exp();
                ScalarFunction::new(name, iso, move |p| (1.0 - (-a * p.x()).exp()) / norm)
            } else {
                return Err(unknown(space, name));
            }
        }
    };
    Ok(f)
}

/// `[0,1]` with the usual order. Compact, so every point has level 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedInterval;

impl SampledSpace for ClosedInterval {
    fn name(&self) -> &str {
        "closed-interval"
    }

    fn dim(&self) -> usize {
        1
    }

    fn ends(&self) -> usize {
        0
    }

    fn exhaustion(&self, _p: &Point) -> f64 {
        0.0
    }

    fn core_depth(&self, _resolution: usize) -> usize {
        0
    }

    fn sample(&self, resolution: usize, _tail_depth: usize) -> Sample {
        Sample {
            core: linspace(0.0, 1.0, resolution)
                .into_iter()
                .map(Point::scalar)
                .collect(),
            tails: Vec::new(),
        }
    }

    fn relation(&self, p: &Point, q: &Point) -> bool {
        p.x() <= q.x()
    }

    fn function(&self, name: &str) -> Result<ScalarFunction> {
        unit_interval_function(self.name(), name, |x| (1.0 + (20.0 * x).sin()) / 2.0)
    }

    fn default_h(&self, _resolution: usize) -> Result<Vec<ScalarFunction>> {
        Ok(vec![self.function("id")?])
    }

    fn c_part(&self, _resolution: usize, _tail_depth: usize) -> Vec<ScalarFunction> {
        Vec::new()
    }

    fn quotient(&self) -> Option<QuotientGenerator> {
        Some(QuotientGenerator {
            space: Box::new(ClosedInterval),
            project: Box::new(Point::clone),
            resolution: |r| r,
        })
    }
}

/// `ℕ` with the discrete preorder and `K_k = {0, …, k}`.
///
/// The core holds `0..resolution`. The `C⁻` family is the indicators
/// `delta:k` of those points, the `C⁺` family their complements
/// `codelta:k`, and the `C` family both.
#[derive(Debug, Clone, Copy, Default)]
pub struct NatDiscrete;

impl NatDiscrete {
    fn lambda(p: &Point) -> f64 {
        p.x()
    }

    fn index(name: &str, prefix: &str) -> Option<usize> {
        name.strip_prefix(prefix)?.strip_prefix(':')?.parse().ok()
    }
}

fn same_integer(x: f64, k: usize) -> bool {
    (x - k as f64).abs() < 0.5
}

impl SampledSpace for NatDiscrete {
    fn name(&self) -> &str {
        "nat-discrete"
    }

    fn dim(&self) -> usize {
        1
    }

    fn ends(&self) -> usize {
        1
    }

    fn exhaustion(&self, p: &Point) -> f64 {
        Self::lambda(p)
    }

    fn core_depth(&self, resolution: usize) -> usize {
        resolution.saturating_sub(1)
    }

    fn sample(&self, resolution: usize, tail_depth: usize) -> Sample {
        let m = self.core_depth(resolution);
        Sample {
            core: (0..resolution).map(|n| Point::scalar(n as f64)).collect(),
            tails: vec![single_thread(
                0,
                shell_levels(m, 1.0, tail_depth)
                    .into_iter()
                    .map(Point::scalar)
                    .collect(),
            )],
        }
    }

    fn relation(&self, p: &Point, q: &Point) -> bool {
        p.x() == q.x()
    }

    fn function(&self, name: &str) -> Result<ScalarFunction> {
        // Every function is isotone for the discrete preorder.
        let iso = Monotone::Isotone;
        if let Some(k) = Self::index(name, "delta") {
            return Ok(ScalarFunction::new(name, iso, move |p| {
                if same_integer(p.x(), k) {
                    1.0
                } else {
                    0.0
                }
            })
            .with_tail(k + 1, 0.0));
        }
        if let Some(k) = Self::index(name, "codelta") {
            return Ok(ScalarFunction::new(name, iso, move |p| {
                if same_integer(p.x(), k) {
                    0.0
                } else {
                    1.0
                }
            })
            .with_tail(k + 1, 1.0));
        }
        if name == "alt" {
            return Ok(ScalarFunction::new(name, iso, |p| {
                (1.0 + if (p.x().round() as i64) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }) / 2.0
            }));
        }
        if let Some(a) = parse_param(name, "decay").filter(|&a| a > 0.0) {
            return Ok(ScalarFunction::new(name, iso, move |p| (-a * p.x()).exp()));
        }
        Err(unknown(self.name(), name))
    }

    fn default_h(&self, resolution: usize) -> Result<Vec<ScalarFunction>> {
        self.bump_h(TailClassSelector::C, resolution)
    }

    fn c_part(&self, resolution: usize, tail_depth: usize) -> Vec<ScalarFunction> {
        bump_part(self.core_depth(resolution), tail_depth, Self::lambda)
    }

    fn bump_h(&self, class: TailClassSelector, resolution: usize) -> Result<Vec<ScalarFunction>> {
        let prefixes: &[&str] = match class {
            TailClassSelector::C => &["delta", "codelta"],
            TailClassSelector::CMinus => &["delta"],
            TailClassSelector::CPlus => &["codelta"],
        };
        let mut h = Vec::new();
        for prefix in prefixes {
            for k in 0..resolution {
                h.push(self.function(&format!("{prefix}:{k}"))?);
            }
        }
        Ok(h)
    }
}

/// `ℝ` with `x ≤ y ⇔ |y| ≤ |x|`, so `x ∼ −x`. Two ends, `λ = log₂(1+|x|)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RealLineMirror;

const MIRROR_CORE_DEPTH: usize = 6;
const MIRROR_STEP: f64 = 2.0;

fn mirror_lambda(p: &Point) -> f64 {
    p.x().abs().ln_1p() / std::f64::consts::LN_2
}

fn modulus_samples(count: usize) -> Vec<f64> {
    linspace(0.0, MIRROR_CORE_DEPTH as f64, count)
        .into_iter()
        .map(|l| l.exp2() - 1.0)
        .collect()
}

fn modulus_shells(tail_depth: usize) -> Vec<f64> {
    shell_levels(MIRROR_CORE_DEPTH, MIRROR_STEP, tail_depth)
        .into_iter()
        .map(|l| l.exp2() - 1.0)
        .collect()
}

/// Functions of `|x|` that decrease in the modulus; isotone for the
/// reversed-modulus preorder on both the line and the ray.
fn modulus_function(space: &str, name: &str) -> Result<ScalarFunction> {
    let iso = Monotone::Isotone;
    if name == "inv1p" {
        return Ok(ScalarFunction::new(name, iso, |p| {
            1.0 / (1.0 + p.x().abs())
        }));
    }
    if let Some(a) = parse_param(name, "invpow").filter(|&a| a > 0.0) {
        return Ok(ScalarFunction::new(name, iso, move |p| {
            (1.0 + p.x().abs()).powf(-a)
        }));
    }
    if let Some(a) = parse_param(name, "expdecay").filter(|&a| a > 0.0) {
        return Ok(ScalarFunction::new(name, iso, move |p| {
            (-a * p.x().abs()).exp()
        }));
    }
    Err(unknown(space, name))
}

impl SampledSpace for RealLineMirror {
    fn name(&self) -> &str {
        "real-line-mirror"
    }

    fn dim(&self) -> usize {
        1
    }

    fn ends(&self) -> usize {
        2
    }

    fn exhaustion(&self, p: &Point) -> f64 {
        mirror_lambda(p)
    }

    fn core_depth(&self, _resolution: usize) -> usize {
        MIRROR_CORE_DEPTH
    }

    /// The positive half (`resolution / 2` points, uniform in `λ`)
    /// followed by its exact negation.
    fn sample(&self, resolution: usize, tail_depth: usize) -> Sample {
        let half = modulus_samples(resolution.div_ceil(2));
        let core = half
            .iter()
            .map(|&x| Point::scalar(x))
            .chain(half.iter().map(|&x| Point::scalar(-x)))
            .collect();
        let shells = modulus_shells(tail_depth);
        let tails = vec![
            single_thread(0, shells.iter().map(|&x| Point::scalar(x)).collect()),
            single_thread(1, shells.iter().map(|&x| Point::scalar(-x)).collect()),
        ];
        Sample { core, tails }
    }

    fn relation(&self, p: &Point, q: &Point) -> bool {
        q.x().abs() <= p.x().abs()
    }

    fn function(&self, name: &str) -> Result<ScalarFunction> {
        modulus_function(self.name(), name)
    }

    fn default_h(&self, _resolution: usize) -> Result<Vec<ScalarFunction>> {
        Ok(vec![self.function("inv1p")?])
    }

    /// Bumps plus a sign coordinate that separates `x` from `−x` on the
    /// core and is 1/2 far out along both ends.
    fn c_part(&self, _resolution: usize, tail_depth: usize) -> Vec<ScalarFunction> {
        let m = MIRROR_CORE_DEPTH;
        let mut c = bump_part(m, tail_depth, mirror_lambda);
        let b = bump(m + 1, mirror_lambda);
        c.push(
            ScalarFunction::new("sign", Monotone::None, move |p| {
                0.5 * (1.0 + p.x().tanh() * b.eval(p))
            })
            .with_tail(m + 2, 0.5),
        );
        c
    }

    fn quotient(&self) -> Option<QuotientGenerator> {
        Some(QuotientGenerator {
            space: Box::new(MirrorRay),
            project: Box::new(|p| Point::scalar(p.x().abs())),
            resolution: |r| r.div_ceil(2),
        })
    }
}

/// `[0,∞)` with the reversed order, the quotient of [`RealLineMirror`].
#[derive(Debug, Clone, Copy, Default)]
pub struct MirrorRay;

impl SampledSpace for MirrorRay {
    fn name(&self) -> &str {
        "mirror-quotient-ray"
    }

    fn dim(&self) -> usize {
        1
    }

    fn ends(&self) -> usize {
        1
    }

    fn exhaustion(&self, p: &Point) -> f64 {
        mirror_lambda(p)
    }

    fn core_depth(&self, _resolution: usize) -> usize {
        MIRROR_CORE_DEPTH
    }

    fn sample(&self, resolution: usize, tail_depth: usize) -> Sample {
        Sample {
            core: modulus_samples(resolution)
                .into_iter()
                .map(Point::scalar)
                .collect(),
            tails: vec![single_thread(
                0,
                modulus_shells(tail_depth)
                    .into_iter()
                    .map(Point::scalar)
                    .collect(),
            )],
        }
    }

    fn relation(&self, p: &Point, q: &Point) -> bool {
        q.x() <= p.x()
    }

    fn function(&self, name: &str) -> Result<ScalarFunction> {
        modulus_function(self.name(), name)
    }

    fn default_h(&self, _resolution: usize) -> Result<Vec<ScalarFunction>> {
        Ok(vec![self.function("inv1p")?])
    }

    fn c_part(&self, _resolution: usize, tail_depth: usize) -> Vec<ScalarFunction> {
        bump_part(MIRROR_CORE_DEPTH, tail_depth, mirror_lambda)
    }
}
