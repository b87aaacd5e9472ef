//! Integral and fractional matchings and vertex covers.
//!
//! For every hypergraph `ν ≤ ν* = τ* ≤ τ`; [`fractional_optimum`] computes all
//! four quantities with certificates and checks the chain exactly.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::hypercore::{EdgeWeighting, Hypergraph, VertexWeighting};
use crate::lp::LinearProgram;
use crate::mask::{VertexMask, WideMask};
use crate::rational::{self, Rational};

const MEMO_LIMIT: usize = 1 << 20;

/// `ν(H)` with a witnessing matching (edges listed in increasing order).
pub fn matching_number(h: &Hypergraph) -> (usize, Vec<Vec<usize>>) {
    if h.n() <= 128 {
        MatchingSearch::<u128>::new(h).run()
    } else {
        MatchingSearch::<WideMask>::new(h).run()
    }
}

pub fn has_perfect_matching(h: &Hypergraph) -> bool {
    h.n().is_multiple_of(h.k()) && matching_number(h).0 == h.n() / h.k()
}

/// Branch on the lowest undecided vertex `v`: leave it unmatched, or match it
/// by an edge whose smallest vertex is `v`. Edges are tried in lexicographic
/// order and a branch is cut when `current + ⌊undecided / k⌋` cannot beat the
/// incumbent. States already reached with at least as many edges are skipped.
struct MatchingSearch<M: VertexMask> {
    k: usize,
    edges: Vec<(M, usize)>,
    /// `by_first[v]` = edges whose smallest vertex is `v`.
    by_first: Vec<Vec<usize>>,
    memo: HashMap<M, usize>,
    stack: Vec<usize>,
    best: Vec<usize>,
    ceiling: usize,
    h: Hypergraph,
}

impl<M: VertexMask> MatchingSearch<M> {
    fn new(h: &Hypergraph) -> Self {
        let n = h.n();
        let mut by_first = vec![Vec::new(); n];
        let edges: Vec<(M, usize)> = h
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                by_first[e[0]].push(i);
                (M::from_vertices(n, e), i)
            })
            .collect();
        MatchingSearch {
            k: h.k(),
            edges,
            by_first,
            memo: HashMap::new(),
            stack: Vec::new(),
            best: Vec::new(),
            ceiling: 0,
            h: h.clone(),
        }
    }

    fn run(mut self) -> (usize, Vec<Vec<usize>>) {
        let n = self.h.n();
        let mut undecided = M::empty(n);
        for e in self.h.edges() {
            for &v in e {
                undecided.insert(v);
            }
        }
        self.ceiling = undecided.count() / self.k;
        self.search(undecided);
        let witness = self.best.iter().map(|&i| self.h.edges()[i].clone()).collect();
        (self.best.len(), witness)
    }

    fn search(&mut self, undecided: M) {
        let current = self.stack.len();
        if current > self.best.len() {
            self.best = self.stack.clone();
        }
        if self.best.len() == self.ceiling || current + undecided.count() / self.k <= self.best.len() {
            return;
        }
        match self.memo.get(&undecided) {
            Some(&seen) if seen >= current => return,
            _ => {
                if self.memo.len() < MEMO_LIMIT {
                    self.memo.insert(undecided.clone(), current);
                }
            }
        }
        let Some(v) = undecided.lowest() else { return };
        for idx in 0..self.by_first[v].len() {
            let ei = self.by_first[v][idx];
            if self.edges[ei].0.is_subset_of(&undecided) {
                let rest = undecided.minus(&self.edges[ei].0);
                self.stack.push(self.edges[ei].1);
                self.search(rest);
                self.stack.pop();
                if self.best.len() == self.ceiling {
                    return;
                }
            }
        }
        let mut without = undecided;
        without = without.minus(&M::from_vertices(self.h.n(), &[v]));
        self.search(without);
    }
}

/// `τ(H)` with a witnessing vertex cover (sorted).
pub fn cover_number(h: &Hypergraph) -> (usize, Vec<usize>) {
    let mut search = CoverSearch {
        h,
        chosen: Vec::new(),
        in_cover: vec![false; h.n()],
        best: greedy_cover(h),
    };
    search.run();
    let mut best = search.best;
    best.sort_unstable();
    (best.len(), best)
}

fn greedy_cover(h: &Hypergraph) -> Vec<usize> {
    // vertices of a maximal matching always cover
    let mut used = vec![false; h.n()];
    let mut cover = Vec::new();
    for e in h.edges() {
        if e.iter().all(|&v| !used[v]) {
            for &v in e {
                used[v] = true;
                cover.push(v);
            }
        }
    }
    cover
}

struct CoverSearch<'a> {
    h: &'a Hypergraph,
    chosen: Vec<usize>,
    in_cover: Vec<bool>,
    best: Vec<usize>,
}

impl CoverSearch<'_> {
    fn covered(&self, e: &[usize]) -> bool {
        e.iter().any(|&v| self.in_cover[v])
    }

    /// Size of a greedy matching among uncovered edges: each needs its own
    /// cover vertex, so it bounds the remaining cost from below.
    fn lower_bound(&self) -> usize {
        let mut used = vec![false; self.h.n()];
        let mut count = 0;
        for e in self.h.edges() {
            if !self.covered(e) && e.iter().all(|&v| !used[v]) {
                e.iter().for_each(|&v| used[v] = true);
                count += 1;
            }
        }
        count
    }

    fn run(&mut self) {
        if self.chosen.len() + self.lower_bound() >= self.best.len() {
            return;
        }
        let Some(edge) = self.h.edges().iter().find(|e| !self.covered(e)) else {
            self.best = self.chosen.clone();
            return;
        };
        for &v in edge.clone().iter() {
            self.chosen.push(v);
            self.in_cover[v] = true;
            self.run();
            self.in_cover[v] = false;
            self.chosen.pop();
        }
    }
}

/// Optimal fractional matching and fractional vertex cover of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSolution {
    pub value: Rational,
    pub matching: EdgeWeighting,
    pub cover: VertexWeighting,
}

/// Solves the fractional matching LP (one variable per edge, one `≤ 1` row per
/// vertex). The dual read off the final basis is the fractional cover.
pub fn fractional_matching(h: &Hypergraph) -> Result<FractionalSolution> {
    let mut lp = LinearProgram::new(vec![rational::one(); h.n()])?;
    for e in h.edges() {
        lp.add_column(rational::one(), e.iter().map(|&v| (v, rational::one())).collect())?;
    }
    let sol = lp.solve()?;
    let matching = EdgeWeighting::new(h, sol.primal)?;
    let cover = VertexWeighting::new(sol.dual)?;
    debug_assert!(cover.covers(h));
    Ok(FractionalSolution { value: sol.value, matching, cover })
}

/// `ν*(H)` alone.
pub fn fractional_matching_number(h: &Hypergraph) -> Result<Rational> {
    Ok(fractional_matching(h)?.value)
}

/// Every quantity of the chain `ν ≤ ν* = τ* ≤ τ` with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub nu: usize,
    #[serde(with = "rational::serde_str")]
    pub nu_star: Rational,
    #[serde(with = "rational::serde_str")]
    pub tau_star: Rational,
    pub tau: usize,
    pub matching_certificate: Vec<Vec<usize>>,
    /// Aligned with the hypergraph's canonical edge order.
    pub fractional_matching: EdgeWeighting,
    pub fractional_cover: VertexWeighting,
    pub cover_certificate: Vec<usize>,
}

pub fn fractional_optimum(h: &Hypergraph) -> Result<DualityReport> {
    let frac = fractional_matching(h)?;
    let (nu, matching_certificate) = matching_number(h);
    let (tau, cover_certificate) = cover_number(h);
    let report = DualityReport {
        nu,
        nu_star: frac.value.clone(),
        tau_star: frac.cover.total(),
        tau,
        matching_certificate,
        fractional_matching: frac.matching,
        fractional_cover: frac.cover,
        cover_certificate,
    };
    assert!(report.chain_holds(h), "duality chain violated: {report:?}");
    Ok(report)
}

impl DualityReport {
    /// Re-verifies every certificate and the chain `ν ≤ ν* = τ* ≤ τ`.
    pub fn chain_holds(&self, h: &Hypergraph) -> bool {
        let nu = rational::int(self.nu as i64);
        let tau = rational::int(self.tau as i64);
        let matching_ok = self.matching_certificate.len() == self.nu
            && self.matching_certificate.iter().all(|e| h.contains_edge(e))
            && pairwise_disjoint(&self.matching_certificate);
        let cover_ok = self.cover_certificate.len() == self.tau
            && h.edges().iter().all(|e| e.iter().any(|v| self.cover_certificate.contains(v)));
        let fractional_ok = self.fractional_matching.total() == self.nu_star
            && self.fractional_cover.total() == self.tau_star
            && self.fractional_cover.covers(h)
            && self.fractional_matching.vertex_loads(h).iter().all(|l| *l <= rational::one());
        matching_ok
            && cover_ok
            && fractional_ok
            && nu <= self.nu_star
            && self.nu_star == self.tau_star
            && self.tau_star <= tau
    }
}

fn pairwise_disjoint(edges: &[Vec<usize>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    edges.iter().flatten().all(|v| seen.insert(*v))
}
