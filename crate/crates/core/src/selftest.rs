//! The acceptance battery: ten end-to-end checks with fixed seeds, each
//! returning a pass/fail outcome, a one-line detail and its runtime.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::extremal::{construct_clique_plus_isolated, construct_h0, construct_h1, h1_min_degree_closed_form};
use crate::hypercore::{min_d_degree, threshold_hypergraph, Hypergraph, VertexWeighting};
use crate::optmatch::{fractional_matching_number, fractional_optimum, has_perfect_matching, matching_number};
use crate::randcons::{build_sparse_subgraph, prepare_round_two, sample_rounds, MembershipPolicy, RoundOnePlan};
use crate::rational::{self, ratio, Rational};
use crate::rng;
use crate::samuels::{boundary_scan, edge_count_bound, monte_carlo_small_sum, q_t, uniform_min_at_zero, SamuelsQuery, TwoPointFamily};
use crate::storage::{candidate_allocations, optimize_grid, DEFAULT_GRID_BUDGET};
use crate::thresholds::{brute_force_threshold, compare_with_conjecture, ThresholdQuery, DEFAULT_BUDGET};

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(rename = "elapsed_seconds", serialize_with = "seconds")]
    pub elapsed: Duration,
    #[serde(rename = "limit_seconds", serialize_with = "seconds")]
    pub limit: Duration,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    check: fn() -> (bool, String),
}

impl Criterion {
    /// Runs the check; exceeding the time limit fails it.
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let (ok, mut detail) = (self.check)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= self.limit;
        if !in_time {
            detail.push_str(&format!("; over the {}s limit", self.limit.as_secs()));
        }
        Outcome { id: self.id, name: self.name, passed: ok && in_time, detail, elapsed, limit: self.limit }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "duality chain", limit: secs(60), check: duality_chain },
    Criterion { id: 2, name: "small-sum boundary", limit: secs(5), check: small_sum_boundary },
    Criterion { id: 3, name: "argmin at t = 0", limit: secs(5), check: argmin_at_zero },
    Criterion { id: 4, name: "exhaustive thresholds", limit: secs(600), check: exhaustive_thresholds },
    Criterion { id: 5, name: "inequality web", limit: secs(600), check: inequality_web },
    Criterion { id: 6, name: "construction invariants", limit: secs(120), check: construction_invariants },
    Criterion { id: 7, name: "edge-count bound", limit: secs(60), check: edge_count_tightness },
    Criterion { id: 8, name: "monte carlo vs closed form", limit: secs(10), check: monte_carlo },
    Criterion { id: 9, name: "randomized construction", limit: secs(300), check: randomized_construction },
    Criterion { id: 10, name: "storage allocations", limit: secs(120), check: storage },
];

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(Criterion::run).collect()
}

pub fn run_one(id: u8) -> Option<Outcome> {
    CRITERIA.iter().find(|c| c.id == id).map(Criterion::run)
}

fn random_hypergraph(k: usize, n: usize, density: f64, rng: &mut rng::Rng) -> Hypergraph {
    Hypergraph::from_predicate(k, n, |_| rng.gen::<f64>() < density).expect("k <= n")
}

fn duality_chain() -> (bool, String) {
    const CASES: u64 = 500;
    let densities = [0.2, 0.5, 0.8];
    let failures: Vec<u64> = (0..CASES)
        .into_par_iter()
        .filter(|&i| {
            let mut g = rng::stream(1, i);
            let k = 2 + (i % 3) as usize;
            let density = densities[(i / 3 % 3) as usize];
            let n = g.gen_range(k..=12);
            let h = random_hypergraph(k, n, density, &mut g);
            match fractional_optimum(&h) {
                Ok(report) => !(report.chain_holds(&h) && report.nu_star == report.tau_star),
                Err(_) => true,
            }
        })
        .collect();
    (failures.is_empty(), format!("{} of {CASES} instances violate the chain", failures.len()))
}

fn small_sum_boundary() -> (bool, String) {
    let golden = (3.0 - 5f64.sqrt()) / 2.0;
    let scans: Vec<f64> = (2..=4).map(|l| boundary_scan(l, 1e-9).map_or(f64::NAN, |s| s.x_star)).collect();
    let ok = (scans[0] - golden).abs() <= 1e-3
        && (0.275..=0.279).contains(&scans[1])
        && (0.215..=0.219).contains(&scans[2]);
    (ok, format!("x*(2)={:.6} x*(3)={:.6} x*(4)={:.6}", scans[0], scans[1], scans[2]))
}

fn argmin_at_zero() -> (bool, String) {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for l in 2..=8usize {
        // 0 < j/1000 <= 1/(l+1)
        for j in 1..=1000 / (l + 1) {
            let x = ratio(j as i64, 1000);
            checked += 1;
            if !uniform_min_at_zero(l, &x).unwrap_or(false) {
                bad.push((l, j));
            }
        }
    }
    (bad.is_empty(), format!("{checked} grid points, {} failures {:?}", bad.len(), bad.iter().take(3).collect_vec()))
}

fn threshold(q: ThresholdQuery) -> Option<u64> {
    brute_force_threshold(&q, DEFAULT_BUDGET).ok().map(|r| r.value)
}

fn exhaustive_thresholds() -> (bool, String) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(8).build().expect("thread pool");
    pool.install(|| {
        let got = [
            threshold(ThresholdQuery::integral(3, 6, 0, 2).unwrap()),
            threshold(ThresholdQuery::fractional(3, 6, 2, ratio(2, 1)).unwrap()),
            threshold(ThresholdQuery::integral(2, 4, 1, 2).unwrap()),
            threshold(ThresholdQuery::integral(2, 6, 1, 3).unwrap()),
        ];
        let want = [Some(11), Some(2), Some(2), Some(3)];
        (got == want, format!("m0(3,6)={:?} f2(3,6)={:?} m1(2,4)={:?} m1(2,6)={:?}", got[0], got[1], got[2], got[3]))
    })
}

fn inequality_web() -> (bool, String) {
    let queries = [
        ThresholdQuery::integral(2, 4, 0, 2),
        ThresholdQuery::integral(2, 4, 1, 2),
        ThresholdQuery::integral(2, 5, 0, 2),
        ThresholdQuery::integral(2, 5, 1, 2),
        ThresholdQuery::integral(2, 6, 0, 3),
        ThresholdQuery::integral(2, 6, 1, 3),
        ThresholdQuery::integral(2, 6, 1, 2),
        ThresholdQuery::integral(3, 6, 0, 2),
        ThresholdQuery::integral(3, 6, 1, 2),
        ThresholdQuery::integral(3, 6, 2, 2),
        ThresholdQuery::fractional(3, 6, 1, ratio(2, 1)),
        ThresholdQuery::fractional(3, 6, 2, ratio(2, 1)),
        ThresholdQuery::fractional(2, 6, 1, ratio(3, 1)),
        ThresholdQuery::fractional(2, 5, 0, ratio(3, 2)),
    ];
    let mut failures = Vec::new();
    let mut reduction = None;
    for q in queries {
        let q = q.expect("valid query");
        let label = format!("{}({},{},{},{})", q.mode, q.k, q.n, q.d, rational::format(&q.s));
        match compare_with_conjecture(&q, DEFAULT_BUDGET) {
            Ok(r) => {
                if r.fractional_below_integral == Some(false) || !r.above_constructions {
                    failures.push(label);
                } else if let Some(red) = &r.reduction {
                    if !red.holds {
                        failures.push(label);
                    } else if q.k == 3 && q.d == 1 {
                        reduction = Some((red.left, red.right));
                    }
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    let ok = failures.is_empty() && reduction.is_some();
    (ok, format!("f1(3,6) <= f0^2(2,5): {reduction:?}; failures {failures:?}"))
}

fn construction_invariants() -> (bool, String) {
    let mut bad: Vec<String> = Vec::new();
    for (k, n) in [(2, 4), (2, 6), (3, 6), (3, 9), (4, 8)] {
        if construct_h0(k, n).map_or(true, |h| has_perfect_matching(&h)) {
            bad.push(format!("H0({k},{n})"));
        }
    }
    let mut cases = 0;
    for k in [2usize, 3] {
        for n in k..=12 {
            for s in 1..=n / k {
                cases += 1;
                let h = construct_h1(k, n, s).expect("k(s-1) <= n");
                if matching_number(&h).0 != s - 1 {
                    bad.push(format!("nu H1({k},{n},{s})"));
                }
                if fractional_matching_number(&h).ok() != Some(rational::int(s as i64 - 1)) {
                    bad.push(format!("nu* H1({k},{n},{s})"));
                }
                let clique = construct_clique_plus_isolated(k, n, s).expect("ks - 1 <= n");
                if matching_number(&clique).0 != s - 1 {
                    bad.push(format!("nu clique({k},{n},{s})"));
                }
            }
            if n % k == 0 {
                let h = construct_h1(k, n, n / k).expect("valid");
                for d in 0..k {
                    if Some(min_d_degree(&h, d).unwrap_or(usize::MAX) as u64) != h1_min_degree_closed_form(k, n, n / k, d).ok() {
                        bad.push(format!("delta_{d} H1({k},{n})"));
                    }
                }
            }
        }
    }
    (bad.is_empty(), format!("{cases} (k,n,s) cases; failures {bad:?}"))
}

fn edge_count_tightness() -> (bool, String) {
    let mut bad = Vec::new();
    for i in 0..100u64 {
        let mut g = rng::stream(2, i);
        let m = g.gen_range(2..=12usize);
        let l = g.gen_range(2..=m.min(4));
        let q = g.gen_range(1..=12i64);
        let w = VertexWeighting::new((0..m).map(|_| ratio(g.gen_range(0..=q), q)).collect()).expect("in [0, 1]");
        let h = threshold_hypergraph(&w, l).expect("l <= m");
        let Ok((light, bound)) = edge_count_bound(&w, l) else {
            bad.push(i);
            continue;
        };
        let total = binomial(m as u64, l as u64).unwrap_or(0);
        let nu_star = fractional_matching_number(&h).unwrap_or_else(|_| w.total() + rational::one());
        if h.edge_count() as u64 != bound || total - light != bound || nu_star > w.total() {
            bad.push(i);
        }
    }
    (bad.is_empty(), format!("100 weightings; failures {bad:?}"))
}

fn monte_carlo() -> (bool, String) {
    let cases = [(3usize, ratio(1, 5), 0usize), (3, ratio(3, 10), 2), (4, ratio(1, 5), 0)];
    let mut detail = Vec::new();
    let mut ok = true;
    for (l, x, t) in cases {
        let family = TwoPointFamily::new(SamuelsQuery::uniform(l, x.clone()).expect("valid"), t).expect("t < l");
        let exact = rational::to_f64(&q_t(family.query(), t).expect("valid"));
        let passes = (0..20u64)
            .into_par_iter()
            .filter(|&seed| monte_carlo_small_sum(&family, 100_000, seed).is_ok_and(|f| (f - exact).abs() <= 0.01))
            .count();
        ok &= passes >= 19;
        detail.push(format!("({l},{},{t}) {passes}/20", rational::format(&x)));
    }
    (ok, detail.join(" "))
}

fn randomized_construction() -> (bool, String) {
    const REPS: u64 = 200;
    let base = Hypergraph::complete(3, 60).expect("3 <= 60");
    let plan = RoundOnePlan::new(base.clone(), 40, 0.5, 0, 7).expect("valid plan");
    let outcome = sample_rounds(&plan);
    let two = match prepare_round_two(&base, &outcome, MembershipPolicy::PerRoundCopies) {
        Ok(two) => two,
        Err(e) => return (false, e.to_string()),
    };
    let n = base.n();
    let samples: Vec<_> = (0..REPS)
        .into_par_iter()
        .map(|seed| build_sparse_subgraph(&two, 3, seed).expect("valid round data"))
        .collect();
    let reps = REPS as f64;
    let mean_degree = |v: usize| samples.iter().map(|s| s.degrees[v]).sum::<usize>() as f64 / reps;
    let sigma = |var: &Rational| (rational::to_f64(var) / reps).sqrt();
    let vertices_ok = (0..n)
        .filter(|&v| {
            let (_, var) = two.moments(&[v]);
            (mean_degree(v) - outcome.coverage[v] as f64).abs() <= 3.0 * sigma(&var)
        })
        .count();
    let pair_failures = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| {
            let mean = samples.iter().map(|s| s.codegree(u, v)).sum::<usize>() as f64 / reps;
            let (_, var) = two.moments(&[u, v]);
            mean > outcome.coverage_of(&[u, v]) as f64 + 3.0 * sigma(&var)
        })
        .count();
    let decomposed = samples.iter().all(|s| s.degree_decomposition_holds(&two));
    let ok = vertices_ok * 100 >= 95 * n && pair_failures == 0 && two.skipped.is_empty() && decomposed;
    (
        ok,
        format!(
            "{vertices_ok}/{n} vertices within 3 sigma; {pair_failures} pairs above cap; {} rounds without perfect fractional matching",
            two.skipped.len()
        ),
    )
}

fn storage() -> (bool, String) {
    let grid = |n, r, t| optimize_grid(n, r, t, 4, DEFAULT_GRID_BUDGET).map(|a| a.phi).ok();
    let values = [grid(4, 2, 1), grid(5, 2, 2), grid(4, 2, 2)];
    let values_ok = values == [Some(3), Some(7), Some(6)];
    let candidates: Vec<u64> = candidate_allocations(10, 2, 4).map(|c| c.iter().map(|a| a.phi).collect()).unwrap_or_default();
    let candidates_ok = candidates == [28, 30];
    let mut sandwich = Vec::new();
    for t in [1usize, 2] {
        let lower = threshold(ThresholdQuery::fractional(2, 5, 0, rational::int(t as i64)).unwrap());
        let upper = threshold(ThresholdQuery::fractional(2, 5, 0, rational::int(t as i64 + 1)).unwrap());
        let mid = grid(5, 2, t);
        sandwich.push((lower, mid, upper));
    }
    let sandwich_ok = sandwich.iter().all(|&(lo, mid, hi)| match (lo, mid, hi) {
        (Some(lo), Some(mid), Some(hi)) => lo <= mid && mid <= hi,
        _ => false,
    });
    (
        values_ok && candidates_ok && sandwich_ok,
        format!("grid {values:?}; candidates {candidates:?}; sandwich {sandwich:?}"),
    )
}
