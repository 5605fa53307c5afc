//! Random finite spaces and brute-force oracles shared by the integration
//! tests. The oracles work from the explicit family of open sets, never
//! from minimal neighbourhoods, so they check the library independently.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ordcomp::finite::{smallest_closed_preorder, FinitePreorderedSpace, FiniteTopology};
use ordcomp::relation::transitive_reflexive_closure;
use ordcomp::PreorderGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sets as bitmasks over at most 6 points.
pub type Mask = u32;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct RawSpace {
    pub n: usize,
    pub basis: Vec<Vec<usize>>,
    pub relation: Vec<(usize, usize)>,
}

impl RawSpace {
    pub fn topology(&self) -> FiniteTopology {
        FiniteTopology::from_basis(self.n, &self.basis).unwrap()
    }

    pub fn preorder(&self) -> PreorderGraph {
        transitive_reflexive_closure(self.relation.iter().copied(), self.n).unwrap()
    }

    pub fn space(&self) -> FinitePreorderedSpace {
        FinitePreorderedSpace::new(self.topology(), self.preorder()).unwrap()
    }

    pub fn opens(&self) -> Vec<Mask> {
        opens_from_subbasis(self.n, &self.basis)
    }
}

/// A random space on `1..=max_n` points. Roughly half of the draws have
/// their preorder replaced by the smallest closed preorder above it, so
/// closed-graph instances are common.
pub fn random_space(rng: &mut ChaCha8Rng, max_n: usize) -> RawSpace {
    let n = rng.gen_range(1..=max_n);
    let sets = rng.gen_range(0..=n + 1);
    let basis: Vec<Vec<usize>> = (0..sets)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let density = rng.gen_range(0.0..0.4);
    let mut relation: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && rng.gen_bool(density))
        .collect();
    if rng.gen_bool(0.5) {
        let t = FiniteTopology::from_basis(n, &basis).unwrap();
        relation = smallest_closed_preorder(&t, relation)
            .unwrap()
            .pairs()
            .collect();
    }
    RawSpace { n, basis, relation }
}

pub fn mask_of(members: impl IntoIterator<Item = usize>) -> Mask {
    members.into_iter().fold(0, |m, i| m | 1 << i)
}

pub fn members(m: Mask, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| m >> i & 1 == 1).collect()
}

/// All open sets: close the subbasis with ∅ and the whole space under
/// pairwise unions and intersections until nothing new appears.
pub fn opens_from_subbasis(n: usize, basis: &[Vec<usize>]) -> Vec<Mask> {
    let full: Mask = (1 << n) - 1;
    let mut family: BTreeSet<Mask> = basis.iter().map(|b| mask_of(b.iter().copied())).collect();
    family.insert(0);
    family.insert(full);
    loop {
        let current: Vec<Mask> = family.iter().copied().collect();
        let before = family.len();
        for &a in &current {
            for &b in &current {
                family.insert(a | b);
                family.insert(a & b);
            }
        }
        if family.len() == before {
            return current;
        }
    }
}

pub fn closure(opens: &[Mask], n: usize, s: Mask) -> Mask {
    let full: Mask = (1 << n) - 1;
    opens
        .iter()
        .map(|&o| full & !o)
        .filter(|&c| c & s == s)
        .fold(full, |acc, c| acc & c)
}

pub fn is_closed_set(opens: &[Mask], n: usize, s: Mask) -> bool {
    opens.contains(&(((1 << n) - 1) & !s))
}

/// Relation as `n × n` booleans.
pub type Rel = Vec<Vec<bool>>;

pub fn rel_of(g: &PreorderGraph) -> Rel {
    (0..g.n())
        .map(|i| (0..g.n()).map(|j| g.le(i, j)).collect())
        .collect()
}

/// The complement of the graph is open in the product topology: every
/// pair outside it has a basic box `U × V` missing the graph.
pub fn graph_closed(opens: &[Mask], n: usize, rel: &Rel) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            rel[x][y]
                || opens.iter().any(|&u| {
                    u >> x & 1 == 1
                        && opens.iter().any(|&v| {
                            v >> y & 1 == 1
                                && members(u, n)
                                    .iter()
                                    .all(|&a| members(v, n).iter().all(|&b| !rel[a][b]))
                        })
                })
        })
    })
}

pub fn t1_preordered(opens: &[Mask], n: usize, rel: &Rel) -> bool {
    (0..n).all(|x| {
        let up = mask_of((0..n).filter(|&y| rel[x][y]));
        let down = mask_of((0..n).filter(|&y| rel[y][x]));
        is_closed_set(opens, n, up) && is_closed_set(opens, n, down)
    })
}

pub fn is_antisymmetric(rel: &Rel) -> bool {
    let n = rel.len();
    (0..n).all(|i| (0..n).all(|j| i == j || !(rel[i][j] && rel[j][i])))
}

/// Every preorder on `n` points, by filtering all reflexive relations.
pub fn all_preorders(n: usize) -> Vec<Rel> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << off.len() {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            rel[i][j] = bits >> k & 1 == 1;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !rel[a][b] || (0..n).all(|c| !rel[b][c] || rel[a][c])));
        if transitive {
            out.push(rel);
        }
    }
    out
}

/// Intersection of all closed preorders containing `seed`.
pub fn smallest_closed_by_intersection(
    opens: &[Mask],
    n: usize,
    seed: &Rel,
    preorders: &[Rel],
) -> Rel {
    let mut acc = vec![vec![true; n]; n];
    for p in preorders {
        let contains = (0..n).all(|i| (0..n).all(|j| !seed[i][j] || p[i][j]));
        if contains && graph_closed(opens, n, p) {
            for i in 0..n {
                for j in 0..n {
                    acc[i][j] &= p[i][j];
                }
            }
        }
    }
    acc
}

/// Literal continuity into a finite chain: preimages of `(a, 1]` and
/// `[0, a)` are open for every threshold `a`.
pub fn continuous(opens: &[Mask], values: &[u32]) -> bool {
    values.iter().all(|&v| {
        let above = mask_of((0..values.len()).filter(|&i| values[i] > v));
        let below = mask_of((0..values.len()).filter(|&i| values[i] < v));
        opens.contains(&above) && opens.contains(&below)
    })
}

pub fn isotone(rel: &Rel, values: &[u32]) -> bool {
    let n = values.len();
    (0..n).all(|i| (0..n).all(|j| !rel[i][j] || values[i] <= values[j]))
}

/// Every function `0..n → {0..=levels}`.
pub fn all_functions(n: usize, levels: u32) -> impl Iterator<Item = Vec<u32>> {
    let base = levels as u64 + 1;
    (0..base.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = (code % base) as u32;
                code /= base;
                d
            })
            .collect()
    })
}

/// A nested pair `H₁ ⊂ H₂` of isotone names on a random catalog space,
/// with the resolution to build both at.
#[derive(Debug, Clone)]
pub struct NestedFamilies {
    pub space: &'static str,
    pub resolution: usize,
    pub h1: Vec<String>,
    pub h2: Vec<String>,
}

pub fn random_nested_families(rng: &mut ChaCha8Rng) -> NestedFamilies {
    let (space, resolution): (&'static str, usize) = match rng.gen_range(0..5) {
        0 => ("half-open-interval", 32),
        1 => ("closed-interval", 32),
        2 => ("nat-discrete", 16),
        3 => ("real-line-mirror", 32),
        _ => ("misner-strip", 8),
    };
    let exponent = |rng: &mut ChaCha8Rng| format!("{:.2}", rng.gen_range(0.25..4.0));
    let mut pool: Vec<String> = match space {
        "half-open-interval" | "closed-interval" => {
            let mut v: Vec<String> = ["id", "sq", "sqrt", "exp3"].map(String::from).to_vec();
            v.push(format!("pow:{}", exponent(rng)));
            v.push(format!("smooth:{}", exponent(rng)));
            v
        }
        "nat-discrete" => {
            let mut v: Vec<String> = (0..6)
                .map(|i| {
                    let prefix = if i < 3 { "delta" } else { "codelta" };
                    format!("{prefix}:{}", rng.gen_range(0..resolution))
                })
                .collect();
            v.push(format!("decay:{}", exponent(rng)));
            v
        }
        "real-line-mirror" => vec![
            "inv1p".to_string(),
            format!("invpow:{}", exponent(rng)),
            format!("expdecay:{}", exponent(rng)),
        ],
        _ => std::iter::once("time".to_string())
            .chain((0..resolution).map(|j| format!("saw:{j}/{resolution}")))
            .collect(),
    };
    pool.sort();
    pool.dedup();
    let pick = |rng: &mut ChaCha8Rng, from: &[String], lo: usize| -> Vec<String> {
        let k = rng.gen_range(lo..=from.len());
        let mut v: Vec<String> = rand::seq::index::sample(rng, from.len(), k)
            .into_iter()
            .map(|i| from[i].clone())
            .collect();
        v.sort();
        v
    };
    let h2 = pick(rng, &pool, 2.min(pool.len()));
    let h1 = pick(rng, &h2, 1);
    NestedFamilies {
        space,
        resolution,
        h1,
        h2,
    }
}

/// Opens of `E/∼` as images of the saturated opens of `E`, in block
/// indices given by `block_of`.
pub fn quotient_opens(opens: &[Mask], n: usize, block_of: &[usize]) -> Vec<Mask> {
    let mut out: Vec<Mask> = opens
        .iter()
        .copied()
        .filter(|&o| {
            (0..n)
                .all(|x| (0..n).all(|y| block_of[x] != block_of[y] || (o >> x & 1) == (o >> y & 1)))
        })
        .map(|o| mask_of(members(o, n).into_iter().map(|x| block_of[x])))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
