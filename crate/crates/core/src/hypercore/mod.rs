//! Hypergraphs, vertex and edge weightings, degree/link/threshold
//! operations, and the `.hg` / `.wt` text formats.

mod format;
mod hypergraph;
mod weighting;

use itertools::Itertools;

pub use format::{
    parse_hypergraph, parse_weighting, read_hypergraph, read_weighting, render_hypergraph,
    render_weighting, write_hypergraph, write_weighting,
};
pub use hypergraph::Hypergraph;
pub use weighting::{EdgeWeighting, VertexWeighting};

use crate::combinatorics::{binomial, rank_subset};
use crate::error::{invalid, Result};
use crate::rational;

fn sorted_subset(h: &Hypergraph, s: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut s = s.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid(format!("{what} repeats a vertex")));
    }
    if s.iter().any(|&v| v >= h.n()) {
        return Err(invalid(format!("{what} has a vertex outside 0..{}", h.n())));
    }
    Ok(s)
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// `deg_H(S)`: the number of edges containing `s`.
pub fn degree(h: &Hypergraph, s: &[usize]) -> Result<usize> {
    if s.len() > h.k() {
        return Err(invalid(format!("|S|={} exceeds k={}", s.len(), h.k())));
    }
    let s = sorted_subset(h, s, "S")?;
    Ok(h.edges().iter().filter(|e| is_subset(&s, e)).count())
}

/// Minimum `d`-degree `δ_d(H)` over all `d`-subsets of the vertex set.
pub fn min_d_degree(h: &Hypergraph, d: usize) -> Result<usize> {
    if d >= h.k() {
        return Err(invalid(format!("d={d} must lie in [0, k-1={}]", h.k() - 1)));
    }
    if d == 0 {
        return Ok(h.edge_count());
    }
    let slots = binomial(h.n() as u64, d as u64)
        .filter(|&c| c <= 1 << 28)
        .ok_or_else(|| invalid(format!("too many {d}-subsets of {} vertices", h.n())))?;
    let mut counts = vec![0usize; slots as usize];
    for e in h.edges() {
        for sub in e.iter().copied().combinations(d) {
            counts[rank_subset(&sub, h.n())] += 1;
        }
    }
    Ok(counts.into_iter().min().unwrap_or(0))
}

/// The link `H(L)`: the `(k-d)`-graph on `V \ L` whose edges are the sets `S`
/// with `S ∪ L ∈ E(H)`.
///
/// Surviving vertices are relabelled `0..n-d` preserving their order.
pub fn link(h: &Hypergraph, l: &[usize]) -> Result<Hypergraph> {
    let d = l.len();
    if d == 0 || d >= h.k() {
        return Err(invalid(format!("|L|={d} must lie in [1, k-1={}]", h.k() - 1)));
    }
    let l = sorted_subset(h, l, "L")?;
    let mut relabel = vec![usize::MAX; h.n()];
    let mut next = 0;
    for (v, slot) in relabel.iter_mut().enumerate() {
        if l.binary_search(&v).is_err() {
            *slot = next;
            next += 1;
        }
    }
    let edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .filter(|e| is_subset(&l, e))
        .map(|e| {
            e.iter()
                .filter(|v| l.binary_search(v).is_err())
                .map(|&v| relabel[v])
                .collect()
        })
        .collect();
    let mut edges = edges;
    edges.sort_unstable();
    Ok(Hypergraph::from_canonical(h.k() - d, h.n() - d, edges))
}

/// Threshold hypergraph `H_w`: all `k`-sets whose weight sum is at least one.
pub fn threshold_hypergraph(w: &VertexWeighting, k: usize) -> Result<Hypergraph> {
    let one = rational::one();
    Hypergraph::from_predicate(k, w.len(), |e| w.sum_over(e) >= one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn h1_core0() -> Hypergraph {
        // all triples on 6 vertices through vertex 0
        Hypergraph::from_predicate(3, 6, |e| e.contains(&0)).unwrap()
    }

    #[test]
    fn degree_examples() {
        let k6 = Hypergraph::complete(3, 6).unwrap();
        assert_eq!(degree(&k6, &[0, 1]).unwrap(), 4);
        assert_eq!(degree(&h1_core0(), &[0]).unwrap(), 10);
        assert_eq!(degree(&k6, &[]).unwrap(), 20);
        assert!(degree(&k6, &[0, 1, 2, 3]).is_err());
        assert!(degree(&k6, &[6]).is_err());
    }

    #[test]
    fn min_degree_examples() {
        let k6 = Hypergraph::complete(3, 6).unwrap();
        assert_eq!(min_d_degree(&k6, 2).unwrap(), 4);
        assert_eq!(min_d_degree(&h1_core0(), 1).unwrap(), 4);
        assert_eq!(min_d_degree(&h1_core0(), 0).unwrap(), 10);
        assert!(min_d_degree(&k6, 3).is_err());
    }

    #[test]
    fn min_degree_matches_direct_enumeration() {
        let h = h1_core0();
        for d in 0..3 {
            let direct = (0..6)
                .combinations(d)
                .map(|s| degree(&h, &s).unwrap())
                .min()
                .unwrap();
            assert_eq!(min_d_degree(&h, d).unwrap(), direct);
        }
    }

    #[test]
    fn link_examples() {
        let h = h1_core0();
        let through_core = link(&h, &[0]).unwrap();
        assert_eq!(through_core, Hypergraph::complete(2, 5).unwrap());

        let other = link(&h, &[1]).unwrap();
        assert_eq!(other.edge_count(), 4);
        assert!(other.edges().iter().all(|e| e.contains(&0)));

        let k6 = Hypergraph::complete(3, 6).unwrap();
        let pair = link(&k6, &[2, 4]).unwrap();
        assert_eq!((pair.k(), pair.n(), pair.edge_count()), (1, 4, 4));
        assert!(link(&k6, &[]).is_err());
        assert!(link(&k6, &[0, 1, 2]).is_err());
    }

    #[test]
    fn threshold_examples() {
        let w = VertexWeighting::new(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 5)]).unwrap();
        let h = threshold_hypergraph(&w, 2).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);

        let third = VertexWeighting::uniform(5, ratio(1, 3)).unwrap();
        assert_eq!(threshold_hypergraph(&third, 3).unwrap(), Hypergraph::complete(3, 5).unwrap());
    }
}
