//! Vertex bitsets used as memo keys by the combinatorial searches.

use std::hash::Hash;

pub(crate) trait VertexMask: Clone + Eq + Hash {
    fn empty(n: usize) -> Self;
    fn insert(&mut self, v: usize);
    fn is_subset_of(&self, other: &Self) -> bool;
    fn minus(&self, other: &Self) -> Self;
    fn count(&self) -> usize;
    fn lowest(&self) -> Option<usize>;

    fn from_vertices(n: usize, vs: &[usize]) -> Self {
        let mut m = Self::empty(n);
        for &v in vs {
            m.insert(v);
        }
        m
    }
}

impl VertexMask for u128 {
    fn empty(_: usize) -> Self {
        0
    }
    fn insert(&mut self, v: usize) {
        *self |= 1 << v;
    }
    fn is_subset_of(&self, other: &Self) -> bool {
        self & !other == 0
    }
    fn minus(&self, other: &Self) -> Self {
        self & !other
    }
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    fn lowest(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct WideMask(Box<[u64]>);

impl VertexMask for WideMask {
    fn empty(n: usize) -> Self {
        WideMask(vec![0; n.div_ceil(64)].into_boxed_slice())
    }
    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }
    fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }
    fn minus(&self, other: &Self) -> Self {
        WideMask(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & !b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}
