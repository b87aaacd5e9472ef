//! Two-round random construction of a sparse, nearly regular
//! subhypergraph.
//!
//! Round one samples `rounds` vertex sets `R^i`, each vertex independently
//! with probability `p`, and checks how evenly they cover the base. Round two
//! solves a perfect fractional matching `w^i` of every `H[R^i]` and keeps
//! each edge `e` of round `i` with probability `w^i(e)`, so a vertex `v`
//! expects degree `Y_v`, the number of rounds containing it.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{invalid, Error, Result};
use crate::hypercore::{min_d_degree, Hypergraph};
use crate::optmatch::fractional_matching;
use crate::rational::{self, Rational};
use crate::rng;

/// Pass/fail bands for the round-one checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Allowed relative deviation of every `Y_v` from `rounds·p`.
    pub coverage_rel: f64,
    /// Maximum number of rounds containing a fixed pair.
    pub pair_cap: usize,
    /// Allowed relative deviation of every `|R^i|` from `n·p`.
    pub size_rel: f64,
    /// Required fraction of `C(|R^i|−d, k−d)` for every `d`-degree in `H[R^i]`.
    pub degree_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { coverage_rel: 0.5, pair_cap: 2, size_rel: 1.0 / 3.0, degree_fraction: 0.5 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundOnePlan {
    #[serde(skip)]
    pub base: Hypergraph,
    pub rounds: usize,
    pub p: f64,
    /// Degree order examined by the `d`-degree check.
    pub d: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl RoundOnePlan {
    pub fn new(base: Hypergraph, rounds: usize, p: f64, d: usize, seed: u64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(invalid(format!("need 0 < p <= 1 (p={p})")));
        }
        if d >= base.k() {
            return Err(invalid(format!("need d <= k-1 (k={}, d={d})", base.k())));
        }
        Ok(RoundOnePlan { base, rounds, p, d, seed, tolerances: Tolerances::default() })
    }

    /// `p = n^−0.9` and `rounds = ⌈n^1.1⌉`.
    pub fn with_asymptotic_exponents(base: Hypergraph, d: usize, seed: u64) -> Result<Self> {
        let n = base.n() as f64;
        let rounds = n.powf(1.1).ceil() as usize;
        Self::new(base, rounds, n.powf(-0.9), d, seed)
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub violations: usize,
    /// Up to [`MAX_WITNESSES`] offending vertex sets or round indices.
    pub witnesses: Vec<Vec<usize>>,
}

pub const MAX_WITNESSES: usize = 16;

impl Check {
    fn from_violations(all: impl Iterator<Item = Vec<usize>>) -> Self {
        let mut witnesses = Vec::new();
        let mut violations = 0;
        for w in all {
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(w);
            }
            violations += 1;
        }
        Check { passed: violations == 0, violations, witnesses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    /// Every `Y_v` near `rounds·p`.
    pub coverage: Check,
    /// Every pair in at most `pair_cap` rounds.
    pub pairs: Check,
    /// Every base edge inside at most one round.
    pub edge_membership: Check,
    /// Every `|R^i|` near `n·p`.
    pub sizes: Check,
    /// Every `d`-set of every round has large degree in `H[R^i]`.
    pub degrees: Check,
}

impl Checks {
    pub fn all_passed(&self) -> bool {
        [&self.coverage, &self.pairs, &self.edge_membership, &self.sizes, &self.degrees]
            .iter()
            .all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundOneOutcome {
    pub n: usize,
    pub k: usize,
    /// Sorted vertex sets `R^i`.
    pub subsets: Vec<Vec<usize>>,
    /// `Y_v` for every vertex.
    pub coverage: Vec<usize>,
    pub checks: Checks,
}

impl RoundOneOutcome {
    /// `Y_S`: rounds containing every vertex of `s`.
    pub fn coverage_of(&self, s: &[usize]) -> usize {
        self.subsets.iter().filter(|r| s.iter().all(|v| r.binary_search(v).is_ok())).count()
    }

    /// `I_v`: indices of the rounds containing `v`.
    pub fn rounds_containing(&self, v: usize) -> Vec<usize> {
        (0..self.subsets.len()).filter(|&i| self.subsets[i].binary_search(&v).is_ok()).collect()
    }

    /// Recomputes coverage and every check from the stored subsets.
    pub fn verify(&self, plan: &RoundOnePlan) -> bool {
        let recount: Vec<usize> = (0..self.n).map(|v| self.coverage_of(&[v])).collect();
        recount == self.coverage && compute_checks(plan, &self.subsets, &recount) == self.checks
    }
}

fn sample_subset(n: usize, p: f64, seed: u64, round: usize) -> Vec<usize> {
    let mut rng = rng::stream(seed, round as u64);
    (0..n).filter(|_| rng.gen::<f64>() < p).collect()
}

fn compute_checks(plan: &RoundOnePlan, subsets: &[Vec<usize>], coverage: &[usize]) -> Checks {
    let base = &plan.base;
    let (n, k, d) = (base.n(), base.k(), plan.d);
    let tol = &plan.tolerances;
    let rounds = subsets.len() as f64;
    let coverage_target = rounds * plan.p;
    let coverage_check = Check::from_violations(
        (0..n)
            .filter(|&v| (coverage[v] as f64 - coverage_target).abs() > tol.coverage_rel * coverage_target)
            .map(|v| vec![v]),
    );
    let mut pair_counts = vec![0usize; n * n];
    for r in subsets {
        for (a, b) in r.iter().tuple_combinations() {
            pair_counts[a * n + b] += 1;
        }
    }
    let pairs = Check::from_violations(
        (0..n)
            .tuple_combinations()
            .filter(|&(a, b)| pair_counts[a * n + b] > tol.pair_cap)
            .map(|(a, b)| vec![a, b]),
    );
    let membership: Vec<bool> = base
        .edges()
        .par_iter()
        .map(|e| subsets.iter().filter(|r| e.iter().all(|v| r.binary_search(v).is_ok())).nth(1).is_some())
        .collect();
    let edge_membership = Check::from_violations(
        base.edges().iter().zip(&membership).filter(|(_, &bad)| bad).map(|(e, _)| e.clone()),
    );
    let size_target = n as f64 * plan.p;
    let sizes = Check::from_violations(
        (0..subsets.len())
            .filter(|&i| (subsets[i].len() as f64 - size_target).abs() > tol.size_rel * size_target)
            .map(|i| vec![i]),
    );
    let degree_ok: Vec<bool> = subsets
        .par_iter()
        .map(|r| {
            if r.len() < k {
                return false;
            }
            let needed = binomial((r.len() - d) as u64, (k - d) as u64).unwrap_or(u64::MAX) as f64
                * tol.degree_fraction;
            let induced = base.induced(r).expect("round has at least k vertices");
            min_d_degree(&induced, d).expect("d < k") as f64 >= needed
        })
        .collect();
    let degrees = Check::from_violations((0..subsets.len()).filter(|&i| !degree_ok[i]).map(|i| vec![i]));
    Checks { coverage: coverage_check, pairs, edge_membership, sizes, degrees }
}

/// Samples the round-one vertex sets and runs every check. Round `i` draws
/// from its own stream of `seed`, so the outcome depends only on the plan.
pub fn sample_rounds(plan: &RoundOnePlan) -> RoundOneOutcome {
    let n = plan.base.n();
    let subsets: Vec<Vec<usize>> =
        (0..plan.rounds).into_par_iter().map(|i| sample_subset(n, plan.p, plan.seed, i)).collect();
    let mut coverage = vec![0usize; n];
    for r in &subsets {
        for &v in r {
            coverage[v] += 1;
        }
    }
    let checks = compute_checks(plan, &subsets, &coverage);
    RoundOneOutcome { n, k: plan.base.k(), subsets, coverage, checks }
}

/// How an edge lying in several rounds is attributed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipPolicy {
    /// Every edge must lie in at most one round.
    #[default]
    Strict,
    /// Each (round, edge) pair is a separate copy, sampled independently.
    PerRoundCopies,
}

/// One round's perfect fractional matching, in base labels.
#[derive(Clone, Debug)]
pub struct RoundMatching {
    pub round: usize,
    /// Edges of `H[R^i]` with positive weight.
    pub edges: Vec<Vec<usize>>,
    pub weights: Vec<Rational>,
    /// `deg_{H[R^i]}(v)` for `v ∈ R^i`, aligned with the round's vertex set.
    pub induced_degrees: Vec<usize>,
    probabilities: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RoundTwo {
    pub n: usize,
    pub policy: MembershipPolicy,
    pub subsets: Vec<Vec<usize>>,
    /// Rounds with a perfect fractional matching, in round order.
    pub matchings: Vec<RoundMatching>,
    /// Rounds whose induced subhypergraph has no perfect fractional matching.
    pub skipped: Vec<usize>,
}

/// Solves the perfect fractional matching LP of every `H[R^i]` in parallel.
pub fn prepare_round_two(
    base: &Hypergraph,
    outcome: &RoundOneOutcome,
    policy: MembershipPolicy,
) -> Result<RoundTwo> {
    if policy == MembershipPolicy::Strict && !outcome.checks.edge_membership.passed {
        return Err(Error::AmbiguousMembership(format!(
            "{} base edges lie in more than one round",
            outcome.checks.edge_membership.violations
        )));
    }
    let k = base.k();
    let solved: Vec<Result<Option<RoundMatching>>> = outcome
        .subsets
        .par_iter()
        .enumerate()
        .map(|(round, r)| {
            if r.is_empty() {
                return Ok(Some(RoundMatching {
                    round,
                    edges: Vec::new(),
                    weights: Vec::new(),
                    induced_degrees: Vec::new(),
                    probabilities: Vec::new(),
                }));
            }
            if r.len() < k {
                return Ok(None);
            }
            let h = base.induced(r)?;
            let sol = fractional_matching(&h)?;
            if !sol.matching.is_perfect(&h) {
                return Ok(None);
            }
            let (edges, weights): (Vec<Vec<usize>>, Vec<Rational>) = h
                .edges()
                .iter()
                .zip(sol.matching.weights())
                .filter(|(_, w)| !w.is_zero())
                .map(|(e, w)| (e.iter().map(|&v| r[v]).collect(), w.clone()))
                .unzip();
            let probabilities = weights.iter().map(rational::to_f64).collect();
            Ok(Some(RoundMatching { round, edges, weights, induced_degrees: h.vertex_degrees(), probabilities }))
        })
        .collect();
    let mut matchings = Vec::new();
    let mut skipped = Vec::new();
    for (round, s) in solved.into_iter().enumerate() {
        match s? {
            Some(m) => matchings.push(m),
            None => skipped.push(round),
        }
    }
    Ok(RoundTwo { n: base.n(), policy, subsets: outcome.subsets.clone(), matchings, skipped })
}

impl RoundTwo {
    /// Rounds that contain `v` and were not skipped.
    pub fn target_coverage(&self, v: usize) -> usize {
        self.matchings.iter().filter(|m| self.subsets[m.round].binary_search(&v).is_ok()).count()
    }

    /// Rounds containing both `u` and `v` that were not skipped.
    pub fn pair_coverage(&self, u: usize, v: usize) -> usize {
        self.matchings
            .iter()
            .filter(|m| {
                let r = &self.subsets[m.round];
                r.binary_search(&u).is_ok() && r.binary_search(&v).is_ok()
            })
            .count()
    }

    /// `E D_S` and `Var D_S` for the copies containing every vertex of `s`.
    pub fn moments(&self, s: &[usize]) -> (Rational, Rational) {
        let mut mean = Rational::zero();
        let mut var = Rational::zero();
        for m in &self.matchings {
            for (e, w) in m.edges.iter().zip(&m.weights) {
                if s.iter().all(|v| e.binary_search(v).is_ok()) {
                    var += w * (Rational::one() - w);
                    mean += w;
                }
            }
        }
        (mean, var)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SparseSubgraph {
    /// Selected `(round, edge)` copies in round order.
    pub copies: Vec<(usize, Vec<usize>)>,
    /// The distinct selected edges.
    #[serde(skip)]
    pub hypergraph: Hypergraph,
    /// `D_v`: selected copies at `v`.
    pub degrees: Vec<usize>,
    /// `Y_v` over the rounds that were not skipped.
    pub targets: Vec<usize>,
    n: usize,
    #[serde(skip)]
    pair_degrees: Vec<u32>,
}

impl SparseSubgraph {
    /// `D_{u,v}`: selected copies containing both `u` and `v`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.pair_degrees[a * self.n + b] as usize
    }

    pub fn max_codegree(&self) -> usize {
        (0..self.n).tuple_combinations().map(|(a, b)| self.codegree(a, b)).max().unwrap_or(0)
    }

    /// Per-round degree split: `D_v` is the sum over rounds, and no round
    /// gives `v` more copies than `H[R^i]` has edges at `v`.
    pub fn degree_decomposition_holds(&self, two: &RoundTwo) -> bool {
        let mut per_round = vec![vec![0usize; self.n]; two.subsets.len()];
        for (round, e) in &self.copies {
            for &v in e {
                per_round[*round][v] += 1;
            }
        }
        let sums_match = (0..self.n).all(|v| per_round.iter().map(|r| r[v]).sum::<usize>() == self.degrees[v]);
        let bounded = two.matchings.iter().all(|m| {
            let r = &two.subsets[m.round];
            r.iter().zip(&m.induced_degrees).all(|(&v, &cap)| per_round[m.round][v] <= cap)
        });
        let only_kept_rounds =
            self.copies.iter().all(|(round, _)| two.matchings.iter().any(|m| m.round == *round));
        sums_match && bounded && only_kept_rounds
    }
}

/// Keeps every positively weighted edge of every kept round independently
/// with its weight as probability. One sequential stream per `seed`.
pub fn build_sparse_subgraph(two: &RoundTwo, k: usize, seed: u64) -> Result<SparseSubgraph> {
    let n = two.n;
    let mut rng = rng::stream(seed, 0);
    let mut copies = Vec::new();
    for m in &two.matchings {
        for (e, &p) in m.edges.iter().zip(&m.probabilities) {
            if rng.gen::<f64>() < p {
                copies.push((m.round, e.clone()));
            }
        }
    }
    let mut degrees = vec![0usize; n];
    let mut pair_degrees = vec![0u32; n * n];
    for (_, e) in &copies {
        for &v in e {
            degrees[v] += 1;
        }
        for (&a, &b) in e.iter().tuple_combinations() {
            pair_degrees[a * n + b] += 1;
        }
    }
    let hypergraph = Hypergraph::new(k, n, copies.iter().map(|(_, e)| e.clone()).unique().collect::<Vec<_>>())?;
    let targets = (0..n).map(|v| two.target_coverage(v)).collect();
    Ok(SparseSubgraph { copies, hypergraph, degrees, targets, n, pair_degrees })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub holds: bool,
    /// Vertices whose degree is outside `((1−τ)D, (1+τ)D)`.
    pub degree_violators: Vec<usize>,
    pub max_codegree: usize,
    pub codegree_ok: bool,
}

/// Every degree strictly inside `((1−τ)D, (1+τ)D)` and `Δ₂ < τD`.
pub fn check_near_regularity(h: &Hypergraph, target: f64, tau: f64) -> Result<RegularityReport> {
    if target.is_nan() || target <= 0.0 || tau.is_nan() || tau <= 0.0 {
        return Err(invalid("need D > 0 and tau > 0"));
    }
    let (lo, hi) = ((1.0 - tau) * target, (1.0 + tau) * target);
    let degree_violators: Vec<usize> = h
        .vertex_degrees()
        .iter()
        .enumerate()
        .filter(|(_, &deg)| !(lo < deg as f64 && (deg as f64) < hi))
        .map(|(v, _)| v)
        .collect();
    let max_codegree = h.max_codegree();
    let codegree_ok = (max_codegree as f64) < tau * target;
    Ok(RegularityReport { holds: degree_violators.is_empty() && codegree_ok, degree_violators, max_codegree, codegree_ok })
}

/// Tail bounds for sums of independent indicators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Chernoff {
    /// `P(|X − EX| ≥ α·EX) ≤ 2e^{−α²EX/3}`, for `α ≤ 3/2`.
    Small { expectation: f64, alpha: f64 },
    /// `P(|X − np| ≥ λ) ≤ e^{−λ²/(3np)}` for `X ~ Bin(n, p)`, `λ ≤ 3np/2`.
    Binomial { n: f64, p: f64, lambda: f64 },
    /// `P(X ≥ x) ≤ e^{−x}`, for `x ≥ 7·EX`.
    Large { expectation: f64, x: f64 },
}

pub fn chernoff_bound(kind: Chernoff) -> Result<f64> {
    match kind {
        Chernoff::Small { expectation, alpha } => {
            if alpha.is_nan() || alpha > 1.5 {
                return Err(invalid(format!("small deviation needs alpha <= 3/2 (alpha={alpha})")));
            }
            if !(alpha >= 0.0 && expectation >= 0.0) {
                return Err(invalid("small deviation needs alpha >= 0 and E >= 0"));
            }
            Ok(2.0 * (-alpha * alpha * expectation / 3.0).exp())
        }
        Chernoff::Binomial { n, p, lambda } => {
            let mean = n * p;
            if !(n >= 0.0 && p > 0.0 && p <= 1.0 && mean > 0.0) {
                return Err(invalid("binomial bound needs n > 0 and 0 < p <= 1"));
            }
            if !(lambda >= 0.0 && lambda <= 1.5 * mean) {
                return Err(invalid(format!("binomial bound needs 0 <= lambda <= 3np/2 (lambda={lambda}, np={mean})")));
            }
            Ok((-lambda * lambda / (3.0 * mean)).exp())
        }
        Chernoff::Large { expectation, x } => {
            if x.is_nan() || x < 7.0 * expectation {
                return Err(invalid(format!("large deviation needs x >= 7 E X (x={x}, E X={expectation})")));
            }
            Ok((-x).exp())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: usize, n: usize) -> Hypergraph {
        Hypergraph::complete(k, n).unwrap()
    }

    #[test]
    fn plan_validation() {
        assert!(RoundOnePlan::new(complete(3, 6), 1, 0.0, 0, 0).is_err());
        assert!(RoundOnePlan::new(complete(3, 6), 1, 1.5, 0, 0).is_err());
        assert!(RoundOnePlan::new(complete(3, 6), 1, 0.5, 3, 0).is_err());
        let preset = RoundOnePlan::with_asymptotic_exponents(complete(2, 10), 1, 0).unwrap();
        assert_eq!(preset.rounds, 13);
        assert!((preset.p - 10f64.powf(-0.9)).abs() < 1e-12);
    }

    #[test]
    fn full_rounds_break_membership() {
        let plan = RoundOnePlan::new(complete(3, 6), 2, 1.0, 0, 3).unwrap();
        let out = sample_rounds(&plan);
        assert!(!out.checks.edge_membership.passed);
        assert_eq!(out.checks.edge_membership.violations, 20);
        assert!(out.verify(&plan));
        let err = prepare_round_two(&plan.base, &out, MembershipPolicy::Strict).unwrap_err();
        assert!(matches!(err, Error::AmbiguousMembership(_)));
    }

    #[test]
    fn zero_rounds_pass_vacuously() {
        let plan = RoundOnePlan::new(complete(3, 6), 0, 0.5, 0, 3).unwrap();
        let out = sample_rounds(&plan);
        assert!(out.subsets.is_empty());
        assert!(out.checks.edge_membership.passed && out.checks.sizes.passed && out.checks.degrees.passed);
        assert!(out.checks.pairs.passed);
        assert!(out.verify(&plan));
    }

    #[test]
    fn round_sizes_for_sixty_vertices() {
        let plan = RoundOnePlan::new(complete(3, 60), 40, 0.5, 0, 7).unwrap();
        let out = sample_rounds(&plan);
        assert!(out.subsets.iter().all(|r| (20..=40).contains(&r.len())));
        assert!(out.checks.sizes.passed);
        assert!(out.verify(&plan));
        assert_eq!(out.coverage_of(&[5]), out.rounds_containing(5).len());
    }

    #[test]
    fn integral_round_selects_its_matching() {
        // a perfect matching base: its only perfect fractional matching is integral
        let base = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let plan = RoundOnePlan::new(base.clone(), 1, 1.0, 0, 0).unwrap();
        let out = sample_rounds(&plan);
        let two = prepare_round_two(&base, &out, MembershipPolicy::Strict).unwrap();
        let sparse = build_sparse_subgraph(&two, 3, 9).unwrap();
        assert_eq!(sparse.hypergraph, base);
        assert_eq!(sparse.degrees, vec![1; 6]);
        assert_eq!(sparse.targets, vec![1; 6]);
        assert!(sparse.degree_decomposition_holds(&two));
    }

    #[test]
    fn rounds_without_perfect_matching_are_skipped() {
        let base = Hypergraph::new(2, 4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let plan = RoundOnePlan::new(base.clone(), 1, 1.0, 0, 0).unwrap();
        let out = sample_rounds(&plan);
        let two = prepare_round_two(&base, &out, MembershipPolicy::Strict).unwrap();
        assert_eq!(two.skipped, vec![0]);
        assert_eq!(two.target_coverage(0), 0);
    }

    #[test]
    fn copies_policy_matches_expectations() {
        let base = complete(3, 9);
        let plan = RoundOnePlan::new(base.clone(), 6, 0.7, 0, 1).unwrap();
        let out = sample_rounds(&plan);
        let two = prepare_round_two(&base, &out, MembershipPolicy::PerRoundCopies).unwrap();
        for v in 0..9 {
            let (mean, _) = two.moments(&[v]);
            assert_eq!(mean, rational::int(two.target_coverage(v) as i64));
        }
        for (u, v) in (0..9).tuple_combinations() {
            assert!(two.moments(&[u, v]).0 <= rational::int(two.pair_coverage(u, v) as i64));
        }
        let sparse = build_sparse_subgraph(&two, 3, 4).unwrap();
        assert!(sparse.degree_decomposition_holds(&two));
        let again = build_sparse_subgraph(&two, 3, 4).unwrap();
        assert_eq!(sparse.copies, again.copies);
    }

    #[test]
    fn near_regularity_examples() {
        // pairs inside an edge have codegree 1, so only singletons give Δ₂ = 0
        let singletons = Hypergraph::new(1, 4, (0..4).map(|v| vec![v])).unwrap();
        assert!(check_near_regularity(&singletons, 1.0, 0.5).unwrap().holds);
        let pm = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let report = check_near_regularity(&pm, 1.0, 0.5).unwrap();
        assert!(report.degree_violators.is_empty() && !report.codegree_ok);
        let k6 = check_near_regularity(&complete(3, 6), 10.0, 0.1).unwrap();
        assert!(!k6.holds && k6.degree_violators.is_empty() && k6.max_codegree == 4);
        let empty = Hypergraph::empty(3, 6).unwrap();
        assert!(!check_near_regularity(&empty, 2.0, 0.5).unwrap().holds);
        assert!(check_near_regularity(&empty, 0.0, 0.5).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let small = chernoff_bound(Chernoff::Small { expectation: 50.0, alpha: 0.3 }).unwrap();
        assert!((small - 0.44626).abs() < 1e-5);
        let large = chernoff_bound(Chernoff::Large { expectation: 1.0, x: 10.0 }).unwrap();
        assert_eq!(large, (-10f64).exp());
        assert!(chernoff_bound(Chernoff::Small { expectation: 50.0, alpha: 2.0 }).is_err());
        assert!(chernoff_bound(Chernoff::Large { expectation: 2.0, x: 10.0 }).is_err());
        let bin = chernoff_bound(Chernoff::Binomial { n: 100.0, p: 0.5, lambda: 15.0 }).unwrap();
        let via_small = chernoff_bound(Chernoff::Small { expectation: 50.0, alpha: 0.3 }).unwrap();
        assert!((2.0 * bin - via_small).abs() < 1e-12);
        assert!(chernoff_bound(Chernoff::Binomial { n: 100.0, p: 0.5, lambda: 80.0 }).is_err());
    }
}
