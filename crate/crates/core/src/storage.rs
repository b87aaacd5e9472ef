//! Allocations of a unit file across `n` storage nodes under a total budget
//! `T`, where a random `r`-set of nodes recovers the file when the amounts
//! it holds sum to at least one.

use itertools::Itertools;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{invalid, Error, Result};
use crate::hypercore::VertexWeighting;
use crate::rational::{self, Rational};

/// Amounts `x` on `n` nodes, access-set size `r`, integer budget `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Allocation {
    pub x: VertexWeighting,
    pub r: usize,
    #[serde(rename = "T")]
    pub budget: usize,
}

impl Allocation {
    pub fn new(x: VertexWeighting, r: usize, budget: usize) -> Result<Self> {
        if r == 0 || r > x.len() {
            return Err(invalid(format!("need 1 <= r <= n (r={r}, n={})", x.len())));
        }
        if x.total() > rational::int(budget as i64) {
            return Err(invalid(format!(
                "allocation stores {} > T={budget}",
                rational::format(&x.total())
            )));
        }
        Ok(Allocation { x, r, budget })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AllocationReport {
    /// Number of recovering `r`-sets.
    pub phi: u64,
    /// `phi / C(n, r)`.
    #[serde(with = "rational::serde_str")]
    pub success_probability: Rational,
    pub allocation: Allocation,
}

/// Counts the `r`-sets whose amounts sum to at least one.
pub fn phi(a: &Allocation) -> AllocationReport {
    let one = Rational::one();
    let count = (0..a.n()).combinations(a.r).filter(|s| a.x.sum_over(s) >= one).count() as u64;
    report(a.clone(), count)
}

fn report(allocation: Allocation, phi: u64) -> AllocationReport {
    let total = binomial(allocation.n() as u64, allocation.r as u64).expect("C(n, r) fits u64");
    let success_probability = rational::ratio(phi as i64, total as i64);
    AllocationReport { phi, success_probability, allocation }
}

/// `1/r` on the first `rT` nodes (when `rT ≤ n`), then `1` on the first `T`
/// nodes (when `T ≤ n`).
pub fn candidate_allocations(n: usize, r: usize, budget: usize) -> Result<Vec<AllocationReport>> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= n (r={r}, n={n})")));
    }
    let mut out = Vec::new();
    if r * budget <= n {
        let set: Vec<usize> = (0..r * budget).collect();
        let x = scaled_indicator(n, &set, rational::ratio(1, r as i64))?;
        let report = phi(&Allocation::new(x, r, budget)?);
        debug_assert_eq!(Some(report.phi), binomial((r * budget) as u64, r as u64));
        out.push(report);
    }
    if budget <= n {
        let set: Vec<usize> = (0..budget).collect();
        let x = VertexWeighting::indicator(n, &set)?;
        let report = phi(&Allocation::new(x, r, budget)?);
        debug_assert_eq!(
            Some(report.phi),
            binomial(n as u64, r as u64).zip(binomial((n - budget) as u64, r as u64)).map(|(a, b)| a - b)
        );
        out.push(report);
    }
    Ok(out)
}

fn scaled_indicator(n: usize, set: &[usize], value: Rational) -> Result<VertexWeighting> {
    let mut w = vec![Rational::zero(); n];
    for &v in set {
        w[v] = value.clone();
    }
    VertexWeighting::new(w)
}

/// Default grid denominator `2r`.
pub fn default_denominator(r: usize) -> usize {
    2 * r
}

/// Maximum number of grid points [`optimize_grid`] visits.
pub const DEFAULT_GRID_BUDGET: u128 = 50_000_000;

/// Maximizes `Φ` over allocations with every amount a multiple of `1/q` in
/// `[0, 1]` and total exactly `min(T, n)`. Among maximizers the
/// lexicographically greatest is returned.
pub fn optimize_grid(n: usize, r: usize, budget: usize, q: usize, grid_budget: u128) -> Result<AllocationReport> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= n (r={r}, n={n})")));
    }
    if q == 0 {
        return Err(invalid("grid denominator must be positive"));
    }
    let units = q * budget.min(n);
    let space = composition_count(units, n, q);
    if space > grid_budget {
        let total = binomial(n as u64, r as u64).unwrap_or(u64::MAX);
        return Err(Error::BudgetExceeded { required: space, budget: grid_budget, lower: 0, upper: total });
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    let first_max = q.min(units);
    // shard by the first coordinate, visited in descending order
    let shards: Vec<(u64, Vec<usize>)> = (0..=first_max)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|x0| {
            let mut best: Option<(u64, Vec<usize>)> = None;
            let mut x = vec![x0; 1];
            descend(&mut x, units - x0, n - 1, q, &mut |x| {
                let phi = subsets.iter().filter(|s| s.iter().map(|&i| x[i]).sum::<usize>() >= q).count() as u64;
                if best.as_ref().is_none_or(|(b, _)| phi > *b) {
                    best = Some((phi, x.to_vec()));
                }
            });
            best
        })
        .collect();
    // shards arrive in descending first-coordinate order; keep the first maximum
    let (best_phi, best_x) = shards
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .ok_or_else(|| invalid("no allocation fits the grid"))?;
    let x = VertexWeighting::new(best_x.iter().map(|&u| rational::ratio(u as i64, q as i64)).collect())?;
    let allocation = Allocation::new(x, r, budget)?;
    let out = report(allocation, best_phi);
    debug_assert_eq!(phi(&out.allocation).phi, best_phi);
    Ok(out)
}

/// Visits every way to append `slots` values in `0..=cap` summing to
/// `remaining`, in descending lexicographic order.
fn descend(x: &mut Vec<usize>, remaining: usize, slots: usize, cap: usize, visit: &mut impl FnMut(&[usize])) {
    if slots == 0 {
        if remaining == 0 {
            visit(x);
        }
        return;
    }
    if remaining > slots * cap {
        return;
    }
    for v in (0..=remaining.min(cap)).rev() {
        x.push(v);
        descend(x, remaining - v, slots - 1, cap, visit);
        x.pop();
    }
}

/// Number of ways to write `units` as `n` parts each in `0..=cap`.
fn composition_count(units: usize, n: usize, cap: usize) -> u128 {
    let mut ways = vec![0u128; units + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; units + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            *slot = (0..=cap.min(total)).map(|v| ways[total - v]).fold(0u128, u128::saturating_add);
        }
        ways = next;
    }
    ways[units]
}

/// `Φ` as a float, for display.
pub fn success_probability_f64(report: &AllocationReport) -> f64 {
    report.success_probability.to_f64().unwrap_or(f64::NAN)
}
