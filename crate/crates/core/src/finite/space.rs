use fixedbitset::FixedBitSet;

use super::topology::{bitset, FiniteTopology};
use crate::error::{Error, Result};
use crate::relation::{
    quotient_preorder, symmetric_part, transitive_reflexive_closure, PreorderGraph,
};
use crate::report::{CheckReport, Witness};

/// A finite set with a topology and a preorder on the same points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePreorderedSpace {
    topology: FiniteTopology,
    preorder: PreorderGraph,
}

impl FinitePreorderedSpace {
    pub fn new(topology: FiniteTopology, preorder: PreorderGraph) -> Result<Self> {
        if topology.n() != preorder.n() {
            return Err(Error::SizeMismatch {
                expected: topology.n(),
                found: preorder.n(),
            });
        }
        Ok(Self { topology, preorder })
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn preorder(&self) -> &PreorderGraph {
        &self.preorder
    }

    /// `i(x) = {y : x ≤ y}`.
    pub fn increasing_hull(&self, i: usize) -> FixedBitSet {
        self.preorder.row(i).clone()
    }

    /// `d(x) = {y : y ≤ x}`.
    pub fn decreasing_hull(&self, i: usize) -> FixedBitSet {
        self.preorder.column(i)
    }

    /// First pair outside the graph whose product neighbourhood meets it.
    pub fn graph_closure_witness(&self) -> Option<(usize, usize)> {
        first_unclosed_pair(&self.topology, &self.preorder)
    }

    pub fn graph_is_closed(&self) -> CheckReport {
        let mut r = CheckReport::new();
        r.record(
            "graph_closed",
            self.graph_closure_witness()
                .map(|(left, right)| Witness::Pair { left, right }),
        );
        r
    }

    /// Checks that every increasing and decreasing hull is closed.
    pub fn is_t1_preordered(&self) -> CheckReport {
        let t = &self.topology;
        let inc = (0..self.n()).find(|&i| !t.is_closed(&self.increasing_hull(i)));
        let dec = (0..self.n()).find(|&i| !t.is_closed(&self.decreasing_hull(i)));
        let mut r = CheckReport::new();
        r.record(
            "increasing_hulls_closed",
            inc.map(|point| Witness::Point { point }),
        );
        r.record(
            "decreasing_hulls_closed",
            dec.map(|point| Witness::Point { point }),
        );
        r
    }

    pub fn is_closed_preorder(&self) -> bool {
        self.graph_closure_witness().is_none()
    }

    pub fn is_t1(&self) -> bool {
        self.is_t1_preordered().passed()
    }

    /// Quotient by `~`: points are the classes, opens are the projections of
    /// saturated opens, and the preorder is the induced order on classes.
    pub fn quotient_space(&self) -> FinitePreorderedSpace {
        let classes = symmetric_part(&self.preorder);
        let order = quotient_preorder(&self.preorder, &classes).expect("consistent partition");
        let n = self.n();
        let k = classes.len();
        let neighborhoods: Vec<Vec<usize>> = (0..k)
            .map(|b| {
                // Smallest saturated open set containing the class.
                let mut s = bitset(n, classes.classes[b].iter().copied());
                loop {
                    let mut next = s.clone();
                    for x in s.ones() {
                        next.union_with(self.topology.minimal_neighborhood(x));
                    }
                    let blocks: Vec<usize> = next.ones().map(|x| classes.block_of[x]).collect();
                    for blk in blocks {
                        next.extend(classes.classes[blk].iter().copied());
                    }
                    if next == s {
                        break;
                    }
                    s = next;
                }
                let mut proj: Vec<usize> = s.ones().map(|x| classes.block_of[x]).collect();
                proj.sort_unstable();
                proj.dedup();
                proj
            })
            .collect();
        let topology =
            FiniteTopology::from_basis(k, &neighborhoods).expect("projected indices are in range");
        FinitePreorderedSpace {
            topology,
            preorder: order,
        }
    }
}

fn first_unclosed_pair(t: &FiniteTopology, g: &PreorderGraph) -> Option<(usize, usize)> {
    let n = g.n();
    for x in 0..n {
        for y in 0..n {
            if !g.le(x, y) && product_meets(t, g, x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// True iff `N(x) × N(y)` meets the graph of `g`.
fn product_meets(t: &FiniteTopology, g: &PreorderGraph, x: usize, y: usize) -> bool {
    let ny = t.minimal_neighborhood(y);
    t.minimal_neighborhood(x)
        .ones()
        .any(|a| !g.row(a).is_disjoint(ny))
}

/// Least closed preorder containing `seed`: alternate transitive closure
/// and topological closure of the graph in `E × E` until neither adds a
/// pair. Terminates because both steps only grow a finite relation.
pub fn smallest_closed_preorder(
    t: &FiniteTopology,
    seed: impl IntoIterator<Item = (usize, usize)>,
) -> Result<PreorderGraph> {
    let n = t.n();
    let mut g = transitive_reflexive_closure(seed, n)?;
    loop {
        let mut added = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !g.le(x, y) && product_meets(t, &g, x, y) {
                    added.push((x, y));
                }
            }
        }
        if added.is_empty() {
            return Ok(g);
        }
        g = transitive_reflexive_closure(g.pairs().chain(added), n)?;
    }
}
