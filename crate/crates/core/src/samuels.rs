//! Small-deviation quantities for sums of nonnegative random variables.
//!
//! For expectations `μ₁ ≤ … ≤ μ_l` with `Σμᵢ < 1`, the two-point family
//! indexed by `t` fixes `Xᵢ ≡ μᵢ` for `i ≤ t` and lets every later `Xᵢ` take
//! the values `0` and `1 − Σ_{j≤t} μⱼ`. Its small-sum probability is
//!
//! ```text
//! Q_t = ∏_{i>t} (1 − μᵢ / (1 − Σ_{j≤t} μⱼ))
//! ```
//!
//! and the conjectured infimum of `P(X₁ + … + X_l < 1)` is `min_t Q_t`.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{invalid, Result};
use crate::hypercore::VertexWeighting;
use crate::rational::{self, Rational};
use crate::rng;

/// Expectations `μ₁ ≤ … ≤ μ_l`, all nonnegative, summing below one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamuelsQuery {
    mus: Vec<Rational>,
}

impl SamuelsQuery {
    pub fn new(mus: Vec<Rational>) -> Result<Self> {
        if mus.is_empty() {
            return Err(invalid("need at least one expectation"));
        }
        if mus.iter().any(|m| *m < Rational::zero()) {
            return Err(invalid("expectations must be nonnegative"));
        }
        if mus.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid("expectations must be sorted nondecreasing"));
        }
        let total = mus.iter().fold(Rational::zero(), |a, m| a + m);
        if total >= Rational::one() {
            return Err(invalid(format!("expectations sum to {}, need < 1", rational::format(&total))));
        }
        Ok(SamuelsQuery { mus })
    }

    /// `l` copies of `x`.
    pub fn uniform(l: usize, x: Rational) -> Result<Self> {
        Self::new(vec![x; l])
    }

    pub fn l(&self) -> usize {
        self.mus.len()
    }

    pub fn mus(&self) -> &[Rational] {
        &self.mus
    }

    fn prefix(&self, t: usize) -> Rational {
        self.mus[..t].iter().fold(Rational::zero(), |a, m| a + m)
    }
}

/// Exact `Q_t`.
pub fn q_t(query: &SamuelsQuery, t: usize) -> Result<Rational> {
    let l = query.l();
    if t >= l {
        return Err(invalid(format!("t={t} must be below l={l}")));
    }
    let rest = Rational::one() - query.prefix(t);
    if rest <= Rational::zero() {
        return Err(invalid("prefix sum reaches 1"));
    }
    let mut product = Rational::one();
    for mu in &query.mus[t..] {
        let p = mu / &rest;
        if !rational::in_unit_interval(&p) {
            return Err(invalid(format!("success probability {} outside [0, 1]", rational::format(&p))));
        }
        product *= Rational::one() - p;
    }
    Ok(product)
}

/// `min_t Q_t` with the smallest minimizing `t`.
pub fn q_min(query: &SamuelsQuery) -> (Rational, usize) {
    let mut best: Option<(Rational, usize)> = None;
    for t in 0..query.l() {
        // t < l and Σμ < 1 make every Q_t well defined
        let q = q_t(query, t).expect("admissible query");
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            best = Some((q, t));
        }
    }
    best.expect("l >= 1")
}

/// Whether, for `l` equal expectations `x`, the minimum over `t` sits at
/// `t = 0` with value `(1 − x)^l`. Always true for `x ≤ 1/(l+1)`.
pub fn uniform_min_at_zero(l: usize, x: &Rational) -> Result<bool> {
    if l < 2 {
        return Err(invalid("need l >= 2"));
    }
    if *x <= Rational::zero() || x * rational::int(l as i64) >= Rational::one() {
        return Err(invalid("need 0 < x < 1/l"));
    }
    let (value, t) = q_min(&SamuelsQuery::uniform(l, x.clone())?);
    Ok(t == 0 && value == num_traits::pow(Rational::one() - x, l))
}

/// `Q_t` for `l` equal expectations `x`, in floating point:
/// `((1 − (t+1)x) / (1 − tx))^(l−t)`.
pub fn q_t_uniform(l: usize, x: f64, t: usize) -> f64 {
    let ratio = (1.0 - (t as f64 + 1.0) * x) / (1.0 - t as f64 * x);
    ratio.powi((l - t) as i32)
}

/// `Q_0 − min_{t≥1} Q_t` for equal expectations; positive exactly where the
/// minimum leaves `t = 0`.
fn uniform_gap(l: usize, x: f64) -> (f64, f64) {
    let q0 = q_t_uniform(l, x, 0);
    let rest = (1..l).map(|t| q_t_uniform(l, x, t)).fold(f64::INFINITY, f64::min);
    (q0, rest)
}

pub const SCAN_STEP: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub x: f64,
    pub q0: f64,
    pub min_rest: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryScan {
    pub l: usize,
    /// Largest `x` (to `tolerance`) below which `t = 0` attains the minimum.
    pub x_star: f64,
    pub tolerance: f64,
    /// Sign changes of `Q_0 − min_{t≥1} Q_t` seen on the pre-scan grid.
    pub sign_changes: usize,
    /// More than one sign change: `x_star` is the first crossing only.
    pub anomaly: bool,
    /// No crossing before `1/l`; `x_star` is then the end of the domain.
    pub reached_domain_end: bool,
    #[serde(skip)]
    pub rows: Vec<ScanRow>,
}

impl BoundaryScan {
    pub fn csv(&self) -> String {
        let mut out = String::from("x,q0,min_t_ge_1\n");
        for r in &self.rows {
            out.push_str(&format!("{:.6},{:.12},{:.12}\n", r.x, r.q0, r.min_rest));
        }
        out
    }
}

/// Locates the first `x` where the minimum of `Q_t` over equal expectations
/// stops being `Q_0`. A grid pre-scan at step `10⁻³` over `(0, 1/l)` finds the
/// bracketing cell and counts sign changes; bisection then narrows the cell
/// to `tolerance`.
pub fn boundary_scan(l: usize, tolerance: f64) -> Result<BoundaryScan> {
    if l < 2 {
        return Err(invalid("need l >= 2"));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    let end = 1.0 / l as f64;
    let mut rows = Vec::new();
    let mut j = 1;
    loop {
        let x = j as f64 * SCAN_STEP;
        if x >= end {
            break;
        }
        let (q0, min_rest) = uniform_gap(l, x);
        rows.push(ScanRow { x, q0, min_rest });
        j += 1;
    }
    let fails = |r: &ScanRow| r.q0 > r.min_rest;
    let sign_changes = rows.windows(2).filter(|w| fails(&w[0]) != fails(&w[1])).count();
    let first_fail = rows.iter().position(fails);
    let (x_star, reached_domain_end) = match first_fail {
        None => (end, true),
        Some(0) => (0.0, false),
        Some(i) => {
            let (mut lo, mut hi) = (rows[i - 1].x, rows[i].x);
            while hi - lo > tolerance {
                let mid = 0.5 * (lo + hi);
                let (q0, rest) = uniform_gap(l, mid);
                if q0 > rest {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            (lo, false)
        }
    };
    Ok(BoundaryScan {
        l,
        x_star,
        tolerance,
        sign_changes,
        anomaly: sign_changes > 1,
        reached_domain_end,
        rows,
    })
}

/// The two-point distributions realising `Q_t`.
#[derive(Clone, Debug)]
pub struct TwoPointFamily {
    query: SamuelsQuery,
    t: usize,
}

impl TwoPointFamily {
    pub fn new(query: SamuelsQuery, t: usize) -> Result<Self> {
        if t >= query.l() {
            return Err(invalid(format!("t={t} must be below l={}", query.l())));
        }
        Ok(TwoPointFamily { query, t })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn query(&self) -> &SamuelsQuery {
        &self.query
    }

    /// The nonzero value `1 − Σ_{j≤t} μⱼ` taken by the two-point variables.
    pub fn high_value(&self) -> Rational {
        Rational::one() - self.query.prefix(self.t)
    }

    /// `P(Xᵢ ≠ 0)` for the two-point coordinates `i > t`.
    pub fn success_probabilities(&self) -> Vec<Rational> {
        let c = self.high_value();
        self.query.mus[self.t..].iter().map(|m| m / &c).collect()
    }

    /// Exact mean of each coordinate.
    pub fn means(&self) -> Vec<Rational> {
        let c = self.high_value();
        let mut out: Vec<Rational> = self.query.mus[..self.t].to_vec();
        out.extend(self.success_probabilities().into_iter().map(|p| p * &c));
        out
    }

    /// Exact `P(X₁ + … + X_l < 1)`, which is `Q_t`.
    pub fn small_sum_probability(&self) -> Rational {
        q_t(&self.query, self.t).expect("validated family")
    }
}

/// Number of independent shards in the Monte Carlo plan. Fixed, so the
/// estimate depends only on `(seed, samples)`.
pub const MC_SHARDS: u64 = 16;

/// Empirical frequency of `X₁ + … + X_l < 1` over `samples` draws.
pub fn monte_carlo_small_sum(family: &TwoPointFamily, samples: u64, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(invalid("samples must be >= 1"));
    }
    let fixed = family.query.prefix(family.t);
    let high = family.high_value();
    let probs: Vec<f64> = family.success_probabilities().iter().map(rational::to_f64).collect();
    // the sum is fixed + fired * high; decide "< 1" exactly per fired count
    let below: Vec<bool> = (0..=probs.len())
        .map(|fired| &fixed + &high * rational::int(fired as i64) < Rational::one())
        .collect();
    let hits: u64 = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let quota = samples / MC_SHARDS + u64::from(shard < samples % MC_SHARDS);
            let mut rng = rng::stream(seed, shard);
            let mut hits = 0u64;
            for _ in 0..quota {
                let fired = probs.iter().filter(|&&p| rng.gen::<f64>() < p).count();
                hits += u64::from(below[fired]);
            }
            hits
        })
        .sum();
    Ok(hits as f64 / samples as f64)
}

/// Counts the `l`-subsets with weight below one (`N`) and returns
/// `(N, C(n, l) − N)`. Every edge of a hypergraph covered by `w` has weight at
/// least one, so the second value bounds its edge count.
pub fn edge_count_bound(w: &VertexWeighting, l: usize) -> Result<(u64, u64)> {
    let n = w.len();
    if l == 0 || l > n {
        return Err(invalid(format!("need 1 <= l <= n (l={l}, n={n})")));
    }
    let one = Rational::one();
    let light = (0..n).combinations(l).filter(|s| w.sum_over(s) < one).count() as u64;
    let total = binomial(n as u64, l as u64).ok_or_else(|| invalid("C(n, l) overflows"))?;
    Ok((light, total - light))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::threshold_hypergraph;
    use crate::rational::ratio;

    fn uniform(l: usize, x: Rational) -> SamuelsQuery {
        SamuelsQuery::uniform(l, x).unwrap()
    }

    #[test]
    fn q_t_examples() {
        let q = uniform(3, ratio(1, 5));
        assert_eq!(q_t(&q, 0).unwrap(), ratio(64, 125));
        assert_eq!(q_t(&q, 2).unwrap(), ratio(2, 3));
        let mixed = SamuelsQuery::new(vec![ratio(1, 10), ratio(1, 5), ratio(3, 10)]).unwrap();
        assert_eq!(q_t(&mixed, 1).unwrap(), ratio(14, 27));
        assert!(q_t(&q, 3).is_err());
    }

    #[test]
    fn q_min_examples() {
        assert_eq!(q_min(&uniform(3, ratio(1, 5))), (ratio(64, 125), 0));
        assert_eq!(q_min(&uniform(3, ratio(3, 10))), (ratio(1, 4), 2));
        assert_eq!(q_min(&uniform(1, ratio(2, 5))), (ratio(3, 5), 0));
    }

    #[test]
    fn query_validation() {
        assert!(SamuelsQuery::new(vec![]).is_err());
        assert!(SamuelsQuery::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(SamuelsQuery::new(vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(SamuelsQuery::new(vec![ratio(-1, 10)]).is_err());
    }

    #[test]
    fn uniform_min_examples() {
        assert!(uniform_min_at_zero(3, &ratio(1, 4)).unwrap());
        assert!(!uniform_min_at_zero(3, &ratio(3, 10)).unwrap());
        assert!(uniform_min_at_zero(4, &ratio(1, 5)).unwrap());
        assert!(uniform_min_at_zero(3, &ratio(1, 3)).is_err());
        assert!(uniform_min_at_zero(1, &ratio(1, 3)).is_err());
    }

    #[test]
    fn boundary_for_pairs_is_the_golden_root() {
        // (1-x)^2 = (1-2x)/(1-x)  <=>  x^2 - 3x + 1 = 0
        let root = (3.0 - 5f64.sqrt()) / 2.0;
        let scan = boundary_scan(2, 1e-9).unwrap();
        assert!((scan.x_star - root).abs() < 1e-6, "{}", scan.x_star);
        assert_eq!(scan.sign_changes, 1);
        assert!(!scan.anomaly && !scan.reached_domain_end);
    }

    #[test]
    fn boundary_for_three_and_four() {
        let three = boundary_scan(3, 1e-6).unwrap();
        assert!((three.x_star - 0.277).abs() <= 0.002);
        let four = boundary_scan(4, 1e-6).unwrap();
        assert!((four.x_star - 0.217).abs() <= 0.002);
        assert!(boundary_scan(1, 1e-3).is_err());
        assert!(boundary_scan(3, 0.0).is_err());
        assert!(three.csv().starts_with("x,q0,min_t_ge_1\n0.001000,"));
    }

    #[test]
    fn two_point_means_are_exact() {
        let q = SamuelsQuery::new(vec![ratio(1, 10), ratio(1, 5), ratio(3, 10)]).unwrap();
        for t in 0..3 {
            let fam = TwoPointFamily::new(q.clone(), t).unwrap();
            assert_eq!(fam.means(), q.mus());
            assert!(fam.success_probabilities().iter().all(rational::in_unit_interval));
        }
    }

    #[test]
    fn monte_carlo_examples() {
        let fam = TwoPointFamily::new(uniform(3, ratio(1, 5)), 0).unwrap();
        assert!((monte_carlo_small_sum(&fam, 100_000, 0).unwrap() - 0.512).abs() < 0.01);
        let fam = TwoPointFamily::new(uniform(3, ratio(3, 10)), 2).unwrap();
        assert!((monte_carlo_small_sum(&fam, 100_000, 0).unwrap() - 0.25).abs() < 0.01);
        let zero = TwoPointFamily::new(uniform(3, ratio(0, 1)), 0).unwrap();
        assert_eq!(monte_carlo_small_sum(&zero, 1000, 5).unwrap(), 1.0);
        assert!(monte_carlo_small_sum(&zero, 0, 5).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic_per_seed() {
        let fam = TwoPointFamily::new(uniform(4, ratio(1, 5)), 1).unwrap();
        let a = monte_carlo_small_sum(&fam, 5_000, 11).unwrap();
        let b = monte_carlo_small_sum(&fam, 5_000, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_count_bound_examples() {
        let w = VertexWeighting::new(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 5)]).unwrap();
        assert_eq!(edge_count_bound(&w, 2).unwrap(), (3, 3));
        let fifth = VertexWeighting::uniform(5, ratio(1, 5)).unwrap();
        assert_eq!(edge_count_bound(&fifth, 3).unwrap(), (10, 0));
        let one = VertexWeighting::indicator(6, &[0]).unwrap();
        assert_eq!(edge_count_bound(&one, 3).unwrap(), (10, 10));
        assert_eq!(threshold_hypergraph(&one, 3).unwrap().edge_count(), 10);
        assert!(edge_count_bound(&one, 7).is_err());
    }
}
