//! Finite relation algebra on dense bitset rows.
//!
//! A [`PreorderGraph`] stores, for each point `i`, the row `{j : i ≤ j}`.
//! Closure and intersection work a machine word at a time.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reflexive transitive relation on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct PreorderGraph {
    rows: Vec<FixedBitSet>,
}

impl std::fmt::Debug for PreorderGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PreorderGraph")
            .field("n", &self.n())
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl PreorderGraph {
    /// The equality relation.
    pub fn discrete(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        Self { rows }
    }

    /// The indiscrete relation `E × E`.
    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|_| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert_range(..);
                row
            })
            .collect();
        Self { rows }
    }

    /// Builds a graph from rows, checking reflexivity and transitivity.
    pub fn from_rows(rows: Vec<FixedBitSet>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let g = Self { rows };
        if !g.is_valid() {
            return Err(Error::NotPreorder);
        }
        Ok(g)
    }

    /// Rows that are a preorder by construction.
    pub(crate) fn from_rows_unchecked(rows: Vec<FixedBitSet>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == rows.len()));
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Increasing hull `{j : i ≤ j}`.
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    /// Decreasing hull `{j : j ≤ i}`.
    pub fn column(&self, i: usize) -> FixedBitSet {
        let mut col = FixedBitSet::with_capacity(self.n());
        for (j, row) in self.rows.iter().enumerate() {
            if row.contains(i) {
                col.insert(j);
            }
        }
        col
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    /// All pairs `(i, j)` with `i ≤ j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.contains(i))
    }

    pub fn is_transitive(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.ones().all(|j| self.rows[j].is_subset(row)))
    }

    pub fn is_valid(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// True iff `i ≤ j ≤ i` forces `i = j`.
    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_witness().is_none()
    }

    /// Lexicographically least pair `(i, j)`, `i < j`, related both ways.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones().filter(|&j| j > i) {
                if self.rows[j].contains(i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True iff every pair of points is comparable.
    pub fn is_total(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.le(i, j) || self.le(j, i)))
    }

    pub fn is_subset(&self, other: &PreorderGraph) -> bool {
        self.n() == other.n()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }

    /// Lexicographically least pair in exactly one of the two relations.
    pub fn first_difference(&self, other: &PreorderGraph) -> Option<(usize, usize)> {
        for (i, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if let Some(j) = a.symmetric_difference(b).next() {
                return Some((i, j));
            }
        }
        None
    }

    /// Pairs of `self` missing from `other`.
    pub fn excess_over(&self, other: &PreorderGraph) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            out.extend(a.difference(b).map(|j| (i, j)));
        }
        out
    }

    /// Induced relation on `points`, re-indexed by position.
    pub fn restrict(&self, points: &[usize]) -> PreorderGraph {
        let m = points.len();
        let rows = points
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(m);
                for (b, &j) in points.iter().enumerate() {
                    if self.le(i, j) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        Self::from_rows_unchecked(rows)
    }

    /// Covering edges of the transitive reduction. Mutually related points
    /// are joined by a directed cycle through their class.
    pub fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        let classes = symmetric_part(self);
        let q = quotient_preorder(self, &classes).expect("symmetric part is consistent");
        let mut edges = Vec::new();
        for block in &classes.classes {
            if block.len() > 1 {
                for w in block.windows(2) {
                    edges.push((w[0], w[1]));
                }
                edges.push((block[block.len() - 1], block[0]));
            }
        }
        let k = q.n();
        for a in 0..k {
            let mut strict = q.rows[a].clone();
            strict.set(a, false);
            let mut covered = FixedBitSet::with_capacity(k);
            for b in strict.ones() {
                let mut above_b = q.rows[b].clone();
                above_b.set(b, false);
                covered.union_with(&above_b);
            }
            for b in strict.difference(&covered) {
                edges.push((classes.representative(a), classes.representative(b)));
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// Partition of `0..n` into the classes of `x ~ y ⇔ x ≤ y ∧ y ≤ x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceClasses {
    /// Blocks sorted internally and ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// `block_of[i]` is the block index holding `i`.
    pub block_of: Vec<usize>,
}

impl EquivalenceClasses {
    pub fn from_blocks(n: usize, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut classes {
            b.sort_unstable();
        }
        classes.retain(|b| !b.is_empty());
        classes.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![usize::MAX; n];
        for (k, block) in classes.iter().enumerate() {
            for &i in block {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if block_of[i] != usize::MAX {
                    return Err(Error::InconsistentPartition(i, i));
                }
                block_of[i] = k;
            }
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InconsistentPartition(i, i));
        }
        Ok(Self { classes, block_of })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, block: usize) -> usize {
        self.classes[block][0]
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }
}

/// Smallest reflexive transitive relation containing `pairs`.
pub fn transitive_reflexive_closure(
    pairs: impl IntoIterator<Item = (usize, usize)>,
    n: usize,
) -> Result<PreorderGraph> {
    let mut rows = PreorderGraph::discrete(n).rows;
    for (i, j) in pairs {
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        rows[i].insert(j);
    }
    warshall(&mut rows);
    Ok(PreorderGraph::from_rows_unchecked(rows))
}

pub(crate) fn warshall(rows: &mut [FixedBitSet]) {
    let n = rows.len();
    for k in 0..n {
        let row_k = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

/// Classes of mutually related points, found as the strongly connected
/// components of the relation digraph.
pub fn symmetric_part(g: &PreorderGraph) -> EquivalenceClasses {
    let n = g.n();
    let comps = tarjan_scc(n, |v| g.row(v).ones());
    EquivalenceClasses::from_blocks(n, comps).expect("SCCs partition the points")
}

/// Iterative Tarjan over an adjacency callback.
fn tarjan_scc<I, F>(n: usize, succ: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ(root).collect(), 0));

        while let Some((v, children, pos)) = call.last_mut() {
            let v = *v;
            if *pos < children.len() {
                let w = children[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("component member on stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Order on the blocks of `q`: `[x] ≲ [y]` iff some members are related.
pub fn quotient_preorder(g: &PreorderGraph, q: &EquivalenceClasses) -> Result<PreorderGraph> {
    let n = g.n();
    if q.block_of.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: q.block_of.len(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            let mutual = g.le(i, j) && g.le(j, i);
            if mutual != q.same_block(i, j) {
                return Err(Error::InconsistentPartition(i, j));
            }
        }
    }
    let k = q.len();
    let rows = (0..k)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(k);
            for j in g.row(q.representative(a)).ones() {
                row.insert(q.block_of[j]);
            }
            row
        })
        .collect();
    Ok(PreorderGraph::from_rows_unchecked(rows))
}

/// Total preorder `i ≤_f j ⇔ values[i] ≤ values[j]`, compared exactly.
pub fn function_preorder(values: &[f64]) -> Result<PreorderGraph> {
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index, value });
    }
    let n = values.len();
    let rows = values
        .iter()
        .map(|&vi| {
            let mut row = FixedBitSet::with_capacity(n);
            for (j, &vj) in values.iter().enumerate() {
                if vi <= vj {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    Ok(PreorderGraph::from_rows_unchecked(rows))
}

/// Pairwise intersection; the result is again a preorder.
pub fn intersect_graphs(graphs: &[PreorderGraph]) -> Result<PreorderGraph> {
    let (first, rest) = graphs.split_first().ok_or(Error::EmptyFamily)?;
    let mut rows = first.rows.clone();
    for g in rest {
        if g.n() != first.n() {
            return Err(Error::SizeMismatch {
                expected: first.n(),
                found: g.n(),
            });
        }
        for (a, b) in rows.iter_mut().zip(&g.rows) {
            a.intersect_with(b);
        }
    }
    Ok(PreorderGraph::from_rows_unchecked(rows))
}
