//! Extremal constructions without large matchings, and the conjectured or
//! known threshold formulas evaluated exactly.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::combinatorics::binomial_i;
use crate::error::{invalid, Error, Result};
use crate::hypercore::{min_d_degree, Hypergraph};
use crate::rational::{self, Rational};

/// Size of the odd-intersection set `A` used by [`construct_h0`].
///
/// Candidates satisfy `|a - (n - a)| ≤ 2` and `a ≢ n/k (mod 2)`; ties go to
/// the smaller `|a - n/2|`, then to the smaller `a`.
pub fn h0_set_size(k: usize, n: usize) -> Result<usize> {
    if k < 2 || n < k || !n.is_multiple_of(k) {
        return Err(invalid(format!("H0 needs k >= 2, n >= k and k | n (k={k}, n={n})")));
    }
    let parts = n / k;
    (0..=n)
        .filter(|&a| (2 * a).abs_diff(n) <= 2 && a % 2 != parts % 2)
        .min_by_key(|&a| ((2 * a).abs_diff(n), a))
        .ok_or_else(|| Error::ConstructionInfeasible(format!("no admissible |A| for k={k}, n={n}")))
}

/// All `k`-sets meeting `A = {0, …, a-1}` in an odd number of vertices.
///
/// A perfect matching would split `A` into `n/k` odd parts, which has the
/// parity of `n/k`; `|A|` is chosen with the other parity.
pub fn construct_h0(k: usize, n: usize) -> Result<Hypergraph> {
    let a = h0_set_size(k, n)?;
    Hypergraph::from_predicate(k, n, |e| e.iter().filter(|&&v| v < a).count() % 2 == 1)
}

/// `K_n^(k) − K_{n−s+1}^(k)`: every `k`-set meeting `{0, …, s-2}`.
pub fn construct_h1(k: usize, n: usize, s: usize) -> Result<Hypergraph> {
    if s == 0 || k > n || k * (s - 1) > n {
        return Err(invalid(format!("H1 needs 1 <= s <= n/k + 1 and k <= n (k={k}, n={n}, s={s})")));
    }
    Hypergraph::from_predicate(k, n, |e| e[0] < s - 1)
}

/// Complete `k`-graph on `{0, …, ks-2}` plus isolated vertices up to `n`.
pub fn construct_clique_plus_isolated(k: usize, n: usize, s: usize) -> Result<Hypergraph> {
    if s == 0 || k * s - 1 > n {
        return Err(invalid(format!("clique needs 1 <= s and ks - 1 <= n (k={k}, n={n}, s={s})")));
    }
    let size = k * s - 1;
    Hypergraph::from_predicate(k, n, |e| e[k - 1] < size)
}

/// The formula being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Context {
    /// Lower bound on the perfect matching threshold from the parity
    /// construction and the star-like construction.
    PerfectLowerBound,
    /// Lower bound on the perfect fractional matching threshold from the
    /// star-like construction alone.
    FractionalLowerBound,
    /// Conjectured asymptotic perfect matching threshold coefficient.
    PerfectThreshold,
    /// Conjectured asymptotic perfect fractional matching threshold coefficient.
    FractionalThreshold,
    /// Erdős matching conjecture: exact edge count forcing a matching of size `s`.
    ErdosMatching,
    /// Fractional Erdős conjecture: exact edge count forcing `ν* ≥ s`.
    FractionalErdos,
    /// Asymptotic coefficients established for `max(1, k−4) ≤ d ≤ k−1`.
    SettledThreshold,
    /// Exact fractional threshold for `d = k−1`: `⌈n/k⌉`.
    CodegreeFractional,
}

impl Context {
    pub const ALL: [Context; 8] = [
        Context::PerfectLowerBound,
        Context::FractionalLowerBound,
        Context::PerfectThreshold,
        Context::FractionalThreshold,
        Context::ErdosMatching,
        Context::FractionalErdos,
        Context::SettledThreshold,
        Context::CodegreeFractional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Context::PerfectLowerBound => "perfect-lower-bound",
            Context::FractionalLowerBound => "fractional-lower-bound",
            Context::PerfectThreshold => "perfect-threshold",
            Context::FractionalThreshold => "fractional-threshold",
            Context::ErdosMatching => "erdos-matching",
            Context::FractionalErdos => "fractional-erdos",
            Context::SettledThreshold => "settled-threshold",
            Context::CodegreeFractional => "codegree-fractional",
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Context {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Context::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid(format!("unknown context {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    /// Uniformity (`k`, or `l` for the fractional Erdős form).
    pub k: usize,
    pub d: Option<usize>,
    /// Vertex count (`n`, or `m`).
    pub n: Option<usize>,
    #[serde(with = "rational::serde_str_opt")]
    pub s: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureValue {
    pub context: Context,
    pub parameters: Parameters,
    /// Asymptotic coefficient of `C(n-d, k-d)` (or `C(n, k)`).
    #[serde(with = "rational::serde_str_opt")]
    pub coefficient: Option<Rational>,
    /// Exact finite count, where the formula defines one.
    pub count: Option<u64>,
    /// Arguments of the maximum behind `coefficient`.
    #[serde(with = "rational::serde_str_vec")]
    pub coefficient_terms: Vec<Rational>,
    /// Arguments of the maximum behind `count`, before adding one.
    pub count_terms: Vec<u64>,
}

/// `1 − ((k−1)/k)^(k−d)`.
pub fn star_coefficient(k: usize, d: usize) -> Rational {
    let base = rational::ratio(k as i64 - 1, k as i64);
    rational::one() - num_traits::pow(base, k - d)
}

fn require_d(p: &Parameters) -> Result<usize> {
    let d = p.d.ok_or_else(|| invalid("parameter d is required"))?;
    if p.k == 0 || d >= p.k {
        return Err(invalid(format!("need 0 <= d <= k-1 (k={}, d={d})", p.k)));
    }
    Ok(d)
}

fn require_n(p: &Parameters) -> Result<usize> {
    let n = p.n.ok_or_else(|| invalid("parameter n is required"))?;
    if n < p.k {
        return Err(invalid(format!("need n >= k (k={}, n={n})", p.k)));
    }
    Ok(n)
}

fn require_s(p: &Parameters) -> Result<Rational> {
    let s = p.s.clone().ok_or_else(|| invalid("parameter s is required"))?;
    if s <= rational::zero() {
        return Err(invalid("parameter s must be positive"));
    }
    Ok(s)
}

fn ceil_usize(x: &Rational) -> Result<usize> {
    x.ceil().to_integer().to_usize().ok_or_else(|| invalid("value out of range"))
}

fn half() -> Rational {
    rational::ratio(1, 2)
}

/// Evaluates the formula named by `context` at `parameters`.
pub fn conjecture_values(context: Context, parameters: Parameters) -> Result<ConjectureValue> {
    let p = &parameters;
    let k = p.k;
    let mut out = ConjectureValue {
        context,
        parameters: parameters.clone(),
        coefficient: None,
        count: None,
        coefficient_terms: Vec::new(),
        count_terms: Vec::new(),
    };
    match context {
        Context::PerfectLowerBound | Context::PerfectThreshold => {
            let d = require_d(p)?;
            let terms = vec![half(), star_coefficient(k, d)];
            out.coefficient = terms.iter().max().cloned();
            out.coefficient_terms = terms;
            if context == Context::PerfectLowerBound && p.n.is_some() {
                let n = require_n(p)?;
                if !n.is_multiple_of(k) {
                    return Err(invalid(format!("k={k} must divide n={n}")));
                }
                let h0 = min_d_degree(&construct_h0(k, n)?, d)? as u64;
                let h1 = min_d_degree(&construct_h1(k, n, n / k)?, d)? as u64;
                out.count = Some(h0.max(h1) + 1);
                out.count_terms = vec![h0, h1];
            }
        }
        Context::FractionalLowerBound | Context::FractionalThreshold => {
            let d = require_d(p)?;
            let c = star_coefficient(k, d);
            out.coefficient_terms = vec![c.clone()];
            out.coefficient = Some(c);
            if context == Context::FractionalLowerBound && p.n.is_some() {
                let n = require_n(p)?;
                let h1 = min_d_degree(&construct_h1(k, n, n.div_ceil(k))?, d)? as u64;
                out.count = Some(h1 + 1);
                out.count_terms = vec![h1];
            }
        }
        Context::SettledThreshold => {
            let d = require_d(p)?;
            if k < 3 || d == 0 || d + 4 < k {
                return Err(invalid(format!(
                    "settled only for k >= 3 and max(1, k-4) <= d <= k-1 (k={k}, d={d})"
                )));
            }
            let terms = vec![half(), star_coefficient(k, d)];
            out.coefficient = terms.iter().max().cloned();
            out.coefficient_terms = terms;
        }
        Context::ErdosMatching => {
            let n = require_n(p)?;
            let s = require_s(p)?;
            if !s.is_integer() {
                return Err(invalid("erdos-matching needs an integer s"));
            }
            let s = ceil_usize(&s)?;
            if k < 2 || k * s > n {
                return Err(invalid(format!("need k >= 2 and 1 <= s <= n/k (k={k}, n={n}, s={s})")));
            }
            let (k, n, s) = (k as i64, n as i64, s as i64);
            let clique = binomial_i(k * s - 1, k)?;
            let star = binomial_i(n, k)? - binomial_i(n - s + 1, k)?;
            out.count = Some(clique.max(star) + 1);
            out.count_terms = vec![clique, star];
        }
        Context::FractionalErdos => {
            let m = require_n(p)?;
            let s = require_s(p)?;
            if k < 2 || &s * rational::int(k as i64) > rational::int(m as i64) {
                return Err(invalid(format!("need l >= 2 and 0 < s <= m/l (l={k}, m={m})")));
            }
            let ls = ceil_usize(&(s.clone() * rational::int(k as i64)))? as i64;
            let cs = ceil_usize(&s)? as i64;
            let (l, m) = (k as i64, m as i64);
            let clique = binomial_i(ls - 1, l)?;
            let star = binomial_i(m, l)? - binomial_i(m - cs + 1, l)?;
            out.count = Some(clique.max(star) + 1);
            out.count_terms = vec![clique, star];
        }
        Context::CodegreeFractional => {
            let n = require_n(p)?;
            if k < 2 {
                return Err(invalid("codegree-fractional needs k >= 2"));
            }
            out.coefficient = Some(rational::ratio(1, k as i64));
            out.coefficient_terms = vec![rational::ratio(1, k as i64)];
            out.count = Some(n.div_ceil(k) as u64);
            out.count_terms = vec![n.div_ceil(k) as u64 - 1];
        }
    }
    debug_assert!(out
        .coefficient
        .as_ref()
        .is_none_or(|c| *c >= rational::zero() && *c <= Rational::one()));
    Ok(out)
}

/// Closed form `C(n−d, k−d) − C(n−d−s+1, k−d)` for `δ_d(H₁(s))`.
pub fn h1_min_degree_closed_form(k: usize, n: usize, s: usize, d: usize) -> Result<u64> {
    let (k, n, s, d) = (k as i64, n as i64, s as i64, d as i64);
    Ok(binomial_i(n - d, k - d)? - binomial_i(n - d - s + 1, k - d)?)
}
