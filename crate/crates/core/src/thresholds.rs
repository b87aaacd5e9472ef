//! Exhaustive Dirac-type thresholds at desk-scale parameters, and the
//! reduction of a fractional cover to a link with a zero-weight core.
//!
//! For a mode, `k`, `n`, `d` and `s`, the threshold is one more than the
//! largest `δ_d(H)` over `k`-graphs `H` on `n` vertices with `ν(H) ≤ s − 1`
//! (integral) or `ν*(H) < s` (fractional). Every edge set is enumerated as a
//! bitmask over the lexicographic edge slots.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicI64, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::combinatorics::binomial;
use crate::error::{invalid, Error, Result};
use crate::extremal::{self, Context, Parameters};
use crate::hypercore::{link, min_d_degree, threshold_hypergraph, Hypergraph, VertexWeighting};
use crate::optmatch::{fractional_matching_number, matching_number};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Constraint `ν(H) ≤ s − 1`.
    Integral,
    /// Constraint `ν*(H) < s`.
    Fractional,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Integral => "integral",
            Mode::Fractional => "fractional",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integral" => Ok(Mode::Integral),
            "fractional" => Ok(Mode::Fractional),
            _ => Err(invalid(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdQuery {
    pub mode: Mode,
    pub k: usize,
    pub n: usize,
    pub d: usize,
    #[serde(with = "rational::serde_str")]
    pub s: Rational,
}

impl ThresholdQuery {
    /// Validates `0 ≤ d < k ≤ n` and `s`: an integer in `1..=⌊n/k⌋` for
    /// integral mode, any positive rational for fractional mode.
    pub fn new(mode: Mode, k: usize, n: usize, d: usize, s: Rational) -> Result<Self> {
        if k == 0 || k > n {
            return Err(invalid(format!("need 1 <= k <= n (k={k}, n={n})")));
        }
        if d >= k {
            return Err(invalid(format!("need 0 <= d <= k-1 (k={k}, d={d})")));
        }
        if s <= Rational::zero() {
            return Err(invalid("s must be positive"));
        }
        if mode == Mode::Integral {
            if !s.is_integer() {
                return Err(invalid("integral mode needs an integer s"));
            }
            if s > rational::int((n / k) as i64) {
                return Err(invalid(format!("integral mode needs s <= floor(n/k) = {}", n / k)));
            }
        }
        Ok(ThresholdQuery { mode, k, n, d, s })
    }

    pub fn integral(k: usize, n: usize, d: usize, s: usize) -> Result<Self> {
        Self::new(Mode::Integral, k, n, d, rational::int(s as i64))
    }

    pub fn fractional(k: usize, n: usize, d: usize, s: Rational) -> Result<Self> {
        Self::new(Mode::Fractional, k, n, d, s)
    }

    /// `s = n/k`: the perfect (fractional) matching threshold.
    pub fn is_perfect(&self) -> bool {
        &self.s * rational::int(self.k as i64) == rational::int(self.n as i64)
    }

    fn ceil_s(&self) -> usize {
        self.s.ceil().to_integer().to_usize().expect("s fits usize")
    }

    /// Whether `h` satisfies the defining constraint.
    pub fn admits(&self, h: &Hypergraph) -> Result<bool> {
        Ok(match self.mode {
            Mode::Integral => rational::int(matching_number(h).0 as i64) < self.s,
            Mode::Fractional => fractional_matching_number(h)? < self.s,
        })
    }

    /// `C(n−d, k−d) + 1`: no `k`-graph has larger `δ_d`.
    pub fn trivial_upper(&self) -> u64 {
        binomial((self.n - self.d) as u64, (self.k - self.d) as u64)
            .map_or(u64::MAX, |c| c.saturating_add(1))
    }

    /// Lower bound from the star-like construction, evaluated in closed form.
    pub fn construction_lower(&self) -> u64 {
        if self.mode == Mode::Fractional && &self.s * rational::int(self.k as i64) > rational::int(self.n as i64) {
            // ν* ≤ n/k < s for every k-graph
            return self.trivial_upper();
        }
        let s = self.ceil_s();
        extremal::h1_min_degree_closed_form(self.k, self.n, s, self.d).map_or(1, |v| v + 1)
    }
}

/// Maximum number of edge sets a search may enumerate.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Edge sets are held in a `u32`.
pub const MAX_SLOTS: u64 = 32;

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdResult {
    pub query: ThresholdQuery,
    pub value: u64,
    /// An admissible hypergraph with `δ_d = value − 1`.
    pub witness: Hypergraph,
    /// The witness as an edge-set index (bit `i` is edge slot `i`).
    pub witness_index: u64,
    pub instances_examined: u64,
    #[serde(rename = "runtime_seconds", serialize_with = "seconds")]
    pub runtime: Duration,
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

struct Tables {
    slots: Vec<Vec<usize>>,
    /// Slots sharing a vertex with slot `i`, including `i`.
    conflicts: Vec<u32>,
    /// Slots containing each `d`-set.
    dsets: Vec<u32>,
}

impl Tables {
    fn new(k: usize, n: usize, d: usize) -> Self {
        let slots: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let vertex_mask = |e: &[usize]| e.iter().fold(0u64, |m, &v| m | 1 << v);
        let masks: Vec<u64> = slots.iter().map(|e| vertex_mask(e)).collect();
        let conflicts = masks
            .iter()
            .map(|&a| {
                masks.iter().enumerate().filter(|(_, &b)| a & b != 0).fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let dsets = (0..n)
            .combinations(d)
            .map(|s| {
                let sm = vertex_mask(&s);
                masks.iter().enumerate().filter(|(_, &b)| b & sm == sm).fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Tables { slots, conflicts, dsets }
    }

    fn min_degree(&self, mask: u32) -> u32 {
        self.dsets.iter().map(|&s| (mask & s).count_ones()).min().unwrap_or(0)
    }

    fn has_matching(&self, avail: u32, need: u32) -> bool {
        if need == 0 {
            return true;
        }
        if avail.count_ones() < need {
            return false;
        }
        let e = avail.trailing_zeros() as usize;
        self.has_matching(avail & !self.conflicts[e], need - 1) || self.has_matching(avail & !(1 << e), need)
    }

    fn hypergraph(&self, k: usize, n: usize, mask: u32) -> Hypergraph {
        let edges = (0..self.slots.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.slots[i].clone()).collect();
        Hypergraph::from_canonical(k, n, edges)
    }
}

fn admits_fast(q: &ThresholdQuery, tables: &Tables, mask: u32) -> bool {
    let need = q.ceil_s() as u32;
    match q.mode {
        Mode::Integral => !tables.has_matching(mask, need),
        Mode::Fractional => {
            // ν* ≥ ν, so a matching of size ⌈s⌉ already rules the graph out
            if tables.has_matching(mask, need) {
                return false;
            }
            let h = tables.hypergraph(q.k, q.n, mask);
            fractional_matching_number(&h).expect("matching LP is bounded") < q.s
        }
    }
}

/// Exact threshold by enumerating every `k`-graph on `n` vertices.
///
/// Graphs whose `δ_d` cannot beat the current best skip the matching test.
/// Shards split the edge-set range by its high bits and merge by maximum
/// `δ_d`, ties going to the smallest edge-set index, so the result does not
/// depend on the thread count.
pub fn brute_force_threshold(q: &ThresholdQuery, budget: u128) -> Result<ThresholdResult> {
    let start = Instant::now();
    let slots = binomial(q.n as u64, q.k as u64).unwrap_or(u64::MAX);
    let required = if slots >= 128 { u128::MAX } else { 1u128 << slots };
    if required > budget || slots > MAX_SLOTS {
        return Err(Error::BudgetExceeded {
            required,
            budget,
            lower: q.construction_lower(),
            upper: q.trivial_upper(),
        });
    }
    let tables = Tables::new(q.k, q.n, q.d);
    let bits = slots.min(8) as u32;
    let width = slots as u32 - bits;
    let global = AtomicI64::new(-1);
    let shards: Vec<Option<(u32, u32)>> = (0u64..1 << bits)
        .into_par_iter()
        .map(|shard| {
            let lo = shard << width;
            let hi = (shard + 1) << width;
            let mut best: Option<(u32, u32)> = None;
            for mask in lo..hi {
                let mask = mask as u32;
                let delta = tables.min_degree(mask);
                if i64::from(delta) < global.load(Ordering::Relaxed) || best.is_some_and(|(b, _)| delta <= b) {
                    continue;
                }
                if admits_fast(q, &tables, mask) {
                    best = Some((delta, mask));
                    global.fetch_max(i64::from(delta), Ordering::Relaxed);
                }
            }
            best
        })
        .collect();
    let (delta, mask) = shards
        .into_iter()
        .flatten()
        .min_by_key(|&(delta, mask)| (std::cmp::Reverse(delta), mask))
        .expect("the empty graph is admissible");
    let witness = tables.hypergraph(q.k, q.n, mask);
    assert_eq!(min_d_degree(&witness, q.d)?, delta as usize, "witness degree");
    assert!(q.admits(&witness)?, "witness constraint");
    Ok(ThresholdResult {
        query: q.clone(),
        value: u64::from(delta) + 1,
        witness,
        witness_index: u64::from(mask),
        instances_examined: 1 << slots,
        runtime: start.elapsed(),
    })
}

/// Output of [`reduce_fractional_instance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub k: usize,
    /// The `d` lightest vertices (ties by index), sorted.
    pub core: Vec<usize>,
    /// The input with the core weights replaced by their average.
    pub averaged: VertexWeighting,
    /// `(w̄ − w₀) / (1 − k·w₀)`, capped at one; zero on the core.
    pub remapped: VertexWeighting,
    /// The common core weight `w₀` after averaging.
    #[serde(with = "rational::serde_str")]
    pub base: Rational,
}

impl Reduction {
    /// The threshold hypergraph shared by `averaged` and `remapped`.
    pub fn threshold_hypergraph(&self) -> Result<Hypergraph> {
        threshold_hypergraph(&self.remapped, self.k)
    }

    /// The link of the threshold hypergraph at the core.
    pub fn link(&self) -> Result<Hypergraph> {
        link(&self.threshold_hypergraph()?, &self.core)
    }

    /// `remapped` restricted to the non-core vertices, relabelled in order.
    /// It covers [`Reduction::link`] because the core has weight zero.
    pub fn link_cover(&self) -> VertexWeighting {
        let weights = (0..self.remapped.len())
            .filter(|v| self.core.binary_search(v).is_err())
            .map(|v| self.remapped.get(v).clone())
            .collect();
        VertexWeighting::new(weights).expect("weights stay in [0, 1]")
    }
}

/// Averages the `d` smallest weights of `w` and shifts the result so that
/// those vertices carry zero weight while every `k`-set keeps its side of
/// the threshold one.
pub fn reduce_fractional_instance(w: &VertexWeighting, k: usize, d: usize) -> Result<Reduction> {
    let n = w.len();
    if d == 0 || d >= k {
        return Err(invalid(format!("need 1 <= d <= k-1 (k={k}, d={d})")));
    }
    if k > n {
        return Err(invalid(format!("need k <= n (k={k}, n={n})")));
    }
    let mut core: Vec<usize> = (0..n).sorted_by(|&a, &b| w.get(a).cmp(w.get(b)).then(a.cmp(&b))).take(d).collect();
    core.sort_unstable();
    let base = w.sum_over(&core) / rational::int(d as i64);
    let kk = rational::int(k as i64);
    if &base * &kk >= Rational::one() {
        return Err(Error::ReductionInfeasible(format!(
            "smallest weight {} after averaging is not below 1/{k}",
            rational::format(&base)
        )));
    }
    let mut averaged = w.weights().to_vec();
    for &v in &core {
        averaged[v] = base.clone();
    }
    let scale = Rational::one() - &base * &kk;
    let remapped = averaged
        .iter()
        .map(|x| ((x - &base) / &scale).min(Rational::one()))
        .collect();
    Ok(Reduction {
        k,
        core,
        averaged: VertexWeighting::new(averaged)?,
        remapped: VertexWeighting::new(remapped)?,
        base,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionBound {
    pub name: &'static str,
    pub min_degree: u64,
    /// `min_degree + 1`.
    pub bound: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaCheck {
    pub formula: extremal::ConjectureValue,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionCheck {
    /// `f_d(k, n)`.
    pub left: u64,
    /// `f₀^{n/k}(k−d, n−d)`.
    pub right: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub query: ThresholdQuery,
    pub value: u64,
    /// The same threshold in the other mode, when `s` is an integer it admits.
    pub counterpart: Option<u64>,
    /// Fractional threshold at most the integral one.
    pub fractional_below_integral: Option<bool>,
    pub constructions: Vec<ConstructionBound>,
    pub above_constructions: bool,
    /// Finite-`n` formula values. Disagreement is reported, not an error.
    pub formulas: Vec<FormulaCheck>,
    pub reduction: Option<ReductionCheck>,
}

fn clique_on(k: usize, n: usize, size: usize) -> Result<Hypergraph> {
    Hypergraph::from_predicate(k, n, |e| e[k - 1] < size)
}

fn constructions(q: &ThresholdQuery) -> Result<Vec<ConstructionBound>> {
    let (k, n, d) = (q.k, q.n, q.d);
    let mut graphs: Vec<(&'static str, Hypergraph)> = Vec::new();
    let s = q.ceil_s();
    if k * (s - 1) <= n {
        graphs.push(("star", extremal::construct_h1(k, n, s)?));
    }
    let kk = rational::int(k as i64);
    let clique = match q.mode {
        Mode::Integral => k * s - 1,
        Mode::Fractional => (&q.s * &kk).ceil().to_integer().to_usize().unwrap_or(usize::MAX) - 1,
    };
    graphs.push(("clique", clique_on(k, n, clique.min(n))?));
    if q.mode == Mode::Integral && q.is_perfect() {
        graphs.push(("parity", extremal::construct_h0(k, n)?));
    }
    graphs
        .into_iter()
        .map(|(name, h)| {
            debug_assert!(q.admits(&h).unwrap_or(false), "{name} construction");
            let min_degree = min_d_degree(&h, d)? as u64;
            Ok(ConstructionBound { name, min_degree, bound: min_degree + 1 })
        })
        .collect()
}

fn formulas(q: &ThresholdQuery) -> Vec<extremal::ConjectureValue> {
    let params = |d: Option<usize>, s: Option<Rational>| Parameters { k: q.k, d, n: Some(q.n), s };
    let mut out = Vec::new();
    match q.mode {
        Mode::Integral if q.d == 0 => {
            out.push(extremal::conjecture_values(Context::ErdosMatching, params(None, Some(q.s.clone()))));
        }
        Mode::Fractional if q.d == 0 && q.s <= rational::ratio(q.n as i64, q.k as i64) => {
            out.push(extremal::conjecture_values(Context::FractionalErdos, params(None, Some(q.s.clone()))));
        }
        Mode::Fractional if q.d + 1 == q.k && q.is_perfect() && q.k >= 2 => {
            out.push(extremal::conjecture_values(Context::CodegreeFractional, params(Some(q.d), None)));
        }
        _ => {}
    }
    out.into_iter().filter_map(Result::ok).collect()
}

/// Brute-forces `q` and sets the value against the constructions, the
/// formula values, the other mode, and (for fractional perfect queries with
/// `d ≥ 1`) the link reduction inequality `f_d(k,n) ≤ f₀^{n/k}(k−d, n−d)`.
pub fn compare_with_conjecture(q: &ThresholdQuery, budget: u128) -> Result<ComparisonReport> {
    let value = brute_force_threshold(q, budget)?.value;
    let other = match q.mode {
        Mode::Integral => Some(Mode::Fractional),
        Mode::Fractional if q.s.is_integer() && q.s <= rational::int((q.n / q.k) as i64) => Some(Mode::Integral),
        Mode::Fractional => None,
    };
    let counterpart = match other {
        Some(mode) => {
            let cq = ThresholdQuery::new(mode, q.k, q.n, q.d, q.s.clone())?;
            Some(brute_force_threshold(&cq, budget)?.value)
        }
        None => None,
    };
    let fractional_below_integral = counterpart.map(|c| match q.mode {
        Mode::Integral => c <= value,
        Mode::Fractional => value <= c,
    });
    let constructions = constructions(q)?;
    let above_constructions = constructions.iter().all(|c| c.bound <= value);
    let formulas = formulas(q)
        .into_iter()
        .map(|formula| {
            let agrees = formula.count == Some(value);
            FormulaCheck { formula, agrees }
        })
        .collect();
    let reduction = if q.mode == Mode::Fractional && q.d >= 1 && q.is_perfect() {
        let rq = ThresholdQuery::fractional(q.k - q.d, q.n - q.d, 0, q.s.clone())?;
        let right = brute_force_threshold(&rq, budget)?.value;
        Some(ReductionCheck { left: value, right, holds: value <= right })
    } else {
        None
    };
    Ok(ComparisonReport {
        query: q.clone(),
        value,
        counterpart,
        fractional_below_integral,
        constructions,
        above_constructions,
        formulas,
        reduction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn run(q: &ThresholdQuery) -> ThresholdResult {
        brute_force_threshold(q, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn graph_thresholds() {
        assert_eq!(run(&ThresholdQuery::integral(2, 4, 1, 2).unwrap()).value, 2);
        assert_eq!(run(&ThresholdQuery::integral(2, 6, 1, 3).unwrap()).value, 3);
        assert_eq!(run(&ThresholdQuery::fractional(2, 5, 0, ratio(1, 1)).unwrap()).value, 1);
        assert_eq!(run(&ThresholdQuery::fractional(2, 5, 0, ratio(2, 1)).unwrap()).value, 5);
        assert_eq!(run(&ThresholdQuery::fractional(2, 5, 0, ratio(3, 1)).unwrap()).value, 11);
    }

    #[test]
    fn codegree_fractional_threshold() {
        let r = run(&ThresholdQuery::fractional(3, 6, 2, ratio(2, 1)).unwrap());
        assert_eq!(r.value, 2);
        assert_eq!(min_d_degree(&r.witness, 2).unwrap(), 1);
        assert!(fractional_matching_number(&r.witness).unwrap() < ratio(2, 1));
    }

    #[test]
    fn query_validation() {
        assert!(ThresholdQuery::integral(3, 6, 3, 2).is_err());
        assert!(ThresholdQuery::integral(3, 6, 0, 3).is_err());
        assert!(ThresholdQuery::fractional(3, 6, 0, ratio(0, 1)).is_err());
        assert!(ThresholdQuery::new(Mode::Integral, 3, 6, 0, ratio(3, 2)).is_err());
        assert!(ThresholdQuery::fractional(2, 5, 0, ratio(3, 1)).is_ok());
    }

    #[test]
    fn budget_reports_bounds() {
        let q = ThresholdQuery::integral(3, 7, 1, 2).unwrap();
        match brute_force_threshold(&q, DEFAULT_BUDGET) {
            Err(Error::BudgetExceeded { required, lower, upper, .. }) => {
                assert_eq!(required, 1 << 35);
                assert_eq!(lower, 6);
                assert_eq!(upper, 16);
            }
            other => panic!("{other:?}"),
        }
        let small = ThresholdQuery::integral(2, 4, 1, 2).unwrap();
        assert!(matches!(brute_force_threshold(&small, 32), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn witnesses_are_deterministic() {
        let q = ThresholdQuery::fractional(2, 6, 1, ratio(3, 1)).unwrap();
        let a = run(&q);
        let b = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run(&q));
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.witness_index, b.witness_index);
    }

    #[test]
    fn reduction_example() {
        let w = VertexWeighting::new(vec![ratio(1, 10), ratio(1, 5), ratio(2, 5), ratio(1, 2)]).unwrap();
        let r = reduce_fractional_instance(&w, 3, 1).unwrap();
        assert_eq!(r.core, vec![0]);
        assert_eq!(r.remapped.weights(), &[ratio(0, 1), ratio(1, 7), ratio(3, 7), ratio(4, 7)]);
        assert_eq!(r.threshold_hypergraph().unwrap(), threshold_hypergraph(&w, 3).unwrap());
    }

    #[test]
    fn reduction_identity_and_errors() {
        let w = VertexWeighting::new(vec![ratio(0, 1), ratio(1, 2), ratio(0, 1), ratio(1, 3), ratio(2, 3)]).unwrap();
        let r = reduce_fractional_instance(&w, 3, 2).unwrap();
        assert_eq!(r.core, vec![0, 2]);
        assert_eq!(r.remapped, w);
        let flat = VertexWeighting::uniform(6, ratio(1, 3)).unwrap();
        assert!(matches!(reduce_fractional_instance(&flat, 3, 1), Err(Error::ReductionInfeasible(_))));
        assert!(reduce_fractional_instance(&flat, 3, 0).is_err());
        assert!(reduce_fractional_instance(&flat, 3, 3).is_err());
    }

    #[test]
    fn reduction_link_is_covered() {
        let w = VertexWeighting::new(vec![ratio(1, 10), ratio(1, 5), ratio(2, 5), ratio(1, 2), ratio(3, 10), ratio(1, 20)])
            .unwrap();
        let r = reduce_fractional_instance(&w, 3, 2).unwrap();
        assert_eq!(r.core, vec![0, 5]);
        let link = r.link().unwrap();
        assert_eq!(link.k(), 1);
        assert!(r.link_cover().covers(&link));
    }

    #[test]
    fn comparison_for_codegree_case() {
        let q = ThresholdQuery::fractional(3, 6, 2, ratio(2, 1)).unwrap();
        let report = compare_with_conjecture(&q, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.value, 2);
        assert_eq!(report.fractional_below_integral, Some(true));
        assert!(report.above_constructions);
        assert!(report.formulas.iter().all(|f| f.agrees));
        assert!(report.reduction.as_ref().unwrap().holds);
    }
}
