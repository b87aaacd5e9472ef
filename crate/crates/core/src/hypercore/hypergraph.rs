use itertools::Itertools;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{invalid, Result};

/// A `k`-uniform hypergraph on vertices `0..n`.
///
/// Edges are sorted vertex lists and the edge list itself is sorted
/// lexicographically with no duplicates, so iteration order is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and the edge list.
    ///
    /// Fails on wrong edge size, repeated or out-of-range vertices, and
    /// duplicate edges.
    pub fn new<I>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        check_shape(k, n)?;
        let mut sorted = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            validate_edge(&e, k, n)?;
            sorted.push(e);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph { k, n, edges: sorted })
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        check_shape(k, n)?;
        Ok(Hypergraph { k, n, edges: Vec::new() })
    }

    /// The complete `k`-graph `K_n^(k)`.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        Self::from_predicate(k, n, |_| true)
    }

    /// All `k`-subsets of `0..n` satisfying `keep`, in lexicographic order.
    pub fn from_predicate<F>(k: usize, n: usize, mut keep: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> bool,
    {
        check_shape(k, n)?;
        let edges = (0..n).combinations(k).filter(|e| keep(e)).collect();
        Ok(Hypergraph { k, n, edges })
    }

    /// Caller guarantees sorted, valid, duplicate-free edges.
    pub(crate) fn from_canonical(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| validate_edge(e, k, n).is_ok()));
        Hypergraph { k, n, edges }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Index of `edge` (sorted) in the canonical edge order.
    pub fn position(&self, edge: &[usize]) -> Option<usize> {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).ok()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.position(edge).is_some()
    }

    /// Returns a copy with `edge` added (no-op if already present).
    pub fn with_edge(&self, mut edge: Vec<usize>) -> Result<Self> {
        edge.sort_unstable();
        validate_edge(&edge, self.k, self.n)?;
        let mut out = self.clone();
        if let Err(at) = out.edges.binary_search(&edge) {
            out.edges.insert(at, edge);
        }
        Ok(out)
    }

    /// The induced subhypergraph `H[R]`, relabelled by the rank of each
    /// vertex within `vertices` (which must be sorted and distinct).
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("induced: vertex list must be strictly increasing"));
        }
        if vertices.last().is_some_and(|&v| v >= self.n) {
            return Err(invalid("induced: vertex out of range"));
        }
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            relabel[v] = i;
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| relabel[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| relabel[v]).collect())
            .collect();
        if vertices.len() < self.k {
            return Err(invalid(format!(
                "induced: {} vertices cannot carry a {}-graph",
                vertices.len(),
                self.k
            )));
        }
        // relabelling is monotone, so lexicographic order survives
        Ok(Hypergraph::from_canonical(self.k, vertices.len(), edges))
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Maximum 2-degree `Δ₂`: the most edges through any pair of vertices.
    pub fn max_codegree(&self) -> usize {
        if self.k < 2 {
            return 0;
        }
        let mut counts = vec![0usize; self.n * self.n];
        for e in &self.edges {
            for (i, &u) in e.iter().enumerate() {
                for &v in &e[i + 1..] {
                    counts[u * self.n + v] += 1;
                }
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    /// Number of `k`-subsets of the vertex set, i.e. `C(n, k)`.
    pub fn slots(&self) -> u64 {
        binomial(self.n as u64, self.k as u64).unwrap_or(u64::MAX)
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(invalid(format!("uniformity k={k} must satisfy 1 <= k <= n={n}")));
    }
    Ok(())
}

fn validate_edge(e: &[usize], k: usize, n: usize) -> Result<()> {
    if e.len() != k {
        return Err(invalid(format!("edge {e:?} has {} vertices, expected {k}", e.len())));
    }
    if e.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid(format!("edge {e:?} repeats a vertex")));
    }
    if e.iter().any(|&v| v >= n) {
        return Err(invalid(format!("edge {e:?} has a vertex outside 0..{n}")));
    }
    Ok(())
}
