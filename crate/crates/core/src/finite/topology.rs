use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Topology on `0..n`, stored through the minimal open neighbourhood of
/// every point. In a finite space these determine all open sets: a set
/// is open iff it contains the minimal neighbourhood of each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    neighborhoods: Vec<FixedBitSet>,
}

pub(crate) fn bitset(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in members {
        s.insert(i);
    }
    s
}

pub(crate) fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn checked_set(n: usize, members: &[usize]) -> Result<FixedBitSet> {
    if let Some(&index) = members.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(bitset(n, members.iter().copied()))
}

impl FiniteTopology {
    pub fn discrete(n: usize) -> Self {
        Self {
            neighborhoods: (0..n).map(|i| bitset(n, [i])).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        Self {
            neighborhoods: (0..n).map(|_| full_set(n)).collect(),
        }
    }

    /// Topology generated by `basis` as a subbasis: the opens are all
    /// unions of finite intersections of basis sets, together with the
    /// empty set and the whole space.
    pub fn from_basis(n: usize, basis: &[Vec<usize>]) -> Result<Self> {
        let sets = basis
            .iter()
            .map(|b| checked_set(n, b))
            .collect::<Result<Vec<_>>>()?;
        let neighborhoods = (0..n)
            .map(|i| {
                let mut nb = full_set(n);
                for s in sets.iter().filter(|s| s.contains(i)) {
                    nb.intersect_with(s);
                }
                nb
            })
            .collect();
        Ok(Self { neighborhoods })
    }

    /// Validates a complete family of open sets.
    pub fn from_opens(n: usize, opens: &[Vec<usize>]) -> Result<Self> {
        let sets = opens
            .iter()
            .map(|o| checked_set(n, o))
            .collect::<Result<Vec<_>>>()?;
        let family: BTreeSet<Vec<usize>> = sets.iter().map(|s| s.ones().collect()).collect();
        if !family.contains(&Vec::new()) {
            return Err(Error::InvalidTopology("missing the empty set".into()));
        }
        if !family.contains(&(0..n).collect::<Vec<_>>()) {
            return Err(Error::InvalidTopology("missing the whole space".into()));
        }
        for a in &sets {
            for b in &sets {
                let union: Vec<usize> = a.union(b).collect();
                let inter: Vec<usize> = a.intersection(b).collect();
                if !family.contains(&union) || !family.contains(&inter) {
                    return Err(Error::InvalidTopology(format!(
                        "not closed under union/intersection of {:?} and {:?}",
                        a.ones().collect::<Vec<_>>(),
                        b.ones().collect::<Vec<_>>()
                    )));
                }
            }
        }
        Self::from_basis(n, opens)
    }

    pub fn n(&self) -> usize {
        self.neighborhoods.len()
    }

    /// Smallest open set containing `i`.
    pub fn minimal_neighborhood(&self, i: usize) -> &FixedBitSet {
        &self.neighborhoods[i]
    }

    pub fn is_open(&self, s: &FixedBitSet) -> bool {
        s.ones().all(|x| self.neighborhoods[x].is_subset(s))
    }

    /// `z ∈ cl(S)` iff the minimal neighbourhood of `z` meets `S`.
    pub fn set_closure(&self, s: &FixedBitSet) -> FixedBitSet {
        let n = self.n();
        let mut cl = FixedBitSet::with_capacity(n);
        for (z, nb) in self.neighborhoods.iter().enumerate() {
            if !nb.is_disjoint(s) {
                cl.insert(z);
            }
        }
        cl
    }

    pub fn is_closed(&self, s: &FixedBitSet) -> bool {
        self.set_closure(s) == *s
    }

    /// Every open set, sorted. The count can reach `2^n`.
    pub fn opens(&self) -> Vec<FixedBitSet> {
        let n = self.n();
        let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
        family.insert(Vec::new());
        let mut frontier = vec![FixedBitSet::with_capacity(n)];
        while let Some(s) = frontier.pop() {
            for nb in &self.neighborhoods {
                let mut u = s.clone();
                u.union_with(nb);
                if family.insert(u.ones().collect()) {
                    frontier.push(u);
                }
            }
        }
        family.into_iter().map(|v| bitset(n, v)).collect()
    }

    /// Connected component index per point. A finite space's clopen sets
    /// are exactly the unions of these components.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, nb) in self.neighborhoods.iter().enumerate() {
            for j in nb.ones() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let r = find(&mut parent, i);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        out
    }
}
