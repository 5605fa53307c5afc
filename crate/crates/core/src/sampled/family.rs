use std::fmt;
use std::sync::Arc;

use super::{Point, SampledSpace, TailClassSelector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Isotone,
    AntiIsotone,
    None,
}

/// Declares that a function is constant, equal to `value`, on every point
/// of exhaustion level at least `level`. A value of 0 places the function
/// in `C⁻`, a value of 1 in `C⁺`; every tail class is inside `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailClass {
    pub level: usize,
    pub value: f64,
}

type Eval = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;

/// Named scalar function into `[0,1]` with its monotonicity and class tags.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    monotone: Monotone,
    tail: Option<TailClass>,
    eval: Eval,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("name", &self.name)
            .field("monotone", &self.monotone)
            .field("tail", &self.tail)
            .finish()
    }
}

impl ScalarFunction {
    pub fn new(
        name: impl Into<String>,
        monotone: Monotone,
        eval: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            monotone,
            tail: None,
            eval: Arc::new(eval),
        }
    }

    pub fn with_tail(mut self, level: usize, value: f64) -> Self {
        self.tail = Some(TailClass { level, value });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn monotone(&self) -> Monotone {
        self.monotone
    }

    pub fn tail_class(&self) -> Option<TailClass> {
        self.tail
    }

    #[inline]
    pub fn eval(&self, p: &Point) -> f64 {
        (self.eval)(p)
    }

    /// Class tags among `F`, `C`, `C-`, `C+`.
    pub fn class_tags(&self) -> Vec<&'static str> {
        let mut tags = Vec::new();
        if self.monotone == Monotone::Isotone {
            tags.push("F");
        }
        if let Some(t) = self.tail {
            tags.push("C");
            if t.value == 0.0 {
                tags.push("C-");
            }
            if t.value == 1.0 {
                tags.push("C+");
            }
        }
        tags
    }
}

/// `H`-part (isotone, defines the preorder) and `C`-part (tail-constant,
/// fixes the topology near the ends).
#[derive(Debug, Clone)]
pub struct FunctionFamily {
    pub h: Vec<ScalarFunction>,
    pub c: Vec<ScalarFunction>,
}

impl FunctionFamily {
    pub fn new(h: Vec<ScalarFunction>, c: Vec<ScalarFunction>) -> Self {
        Self { h, c }
    }

    /// Members in coordinate order: `H` first, then `C`.
    pub fn members(&self) -> impl Iterator<Item = &ScalarFunction> {
        self.h.iter().chain(self.c.iter())
    }

    pub fn dim(&self) -> usize {
        self.h.len() + self.c.len()
    }

    pub fn h_names(&self) -> Vec<String> {
        self.h.iter().map(|f| f.name.clone()).collect()
    }

    pub fn c_names(&self) -> Vec<String> {
        self.c.iter().map(|f| f.name.clone()).collect()
    }

    /// Short human label listing `H`, truncated for large families.
    pub fn label(&self) -> String {
        let names = self.h_names();
        if names.len() <= 4 {
            format!("{{{}}}", names.join(","))
        } else {
            format!("{{{},… {} functions}}", names[..3].join(","), names.len())
        }
    }
}

/// How the `H`-part of a family is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Default,
    Bumps(TailClassSelector),
    Names(Vec<String>),
}

impl FamilySpec {
    pub fn parse(s: &str) -> Self {
        match s {
            "default" => FamilySpec::Default,
            "C" => FamilySpec::Bumps(TailClassSelector::C),
            "Cminus" => FamilySpec::Bumps(TailClassSelector::CMinus),
            "Cplus" => FamilySpec::Bumps(TailClassSelector::CPlus),
            list => FamilySpec::Names(
                list.split(',')
                    .map(|n| n.trim().to_string())
                    .filter(|n| !n.is_empty())
                    .collect(),
            ),
        }
    }

    pub fn as_string(&self) -> String {
        match self {
            FamilySpec::Default => "default".into(),
            FamilySpec::Bumps(c) => c.as_str().into(),
            FamilySpec::Names(n) => n.join(","),
        }
    }
}

pub fn build_family(
    space: &dyn SampledSpace,
    spec: &FamilySpec,
    resolution: usize,
    tail_depth: usize,
) -> Result<FunctionFamily> {
    let h = match spec {
        FamilySpec::Default => space.default_h(resolution)?,
        FamilySpec::Bumps(class) => space.bump_h(*class, resolution)?,
        FamilySpec::Names(names) => {
            if names.is_empty() {
                return Err(Error::Config("empty list of H functions".into()));
            }
            names
                .iter()
                .map(|n| space.function(n))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(FunctionFamily::new(h, space.c_part(resolution, tail_depth)))
}

/// Bump `b_k = clamp((k + 1 − λ)/2, 0, 1)`: 1 on `K_{k−1}`, 0 outside
/// `K_{k+1}`.
pub fn bump(
    k: usize,
    exhaustion: impl Fn(&Point) -> f64 + Send + Sync + 'static,
) -> ScalarFunction {
    ScalarFunction::new(format!("bump:{k}"), Monotone::None, move |p| {
        ((k as f64 + 1.0 - exhaustion(p)) / 2.0).clamp(0.0, 1.0)
    })
    .with_tail(k + 1, 0.0)
}

/// Parses `prefix:<number>` names.
pub(crate) fn parse_param(name: &str, prefix: &str) -> Option<f64> {
    name.strip_prefix(prefix)?
        .strip_prefix(':')?
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
}

pub(crate) fn unknown(space: &str, name: &str) -> Error {
    Error::UnknownFunction {
        space: space.to_string(),
        name: name.to_string(),
    }
}
