//! Small counting helpers shared across modules.

use crate::error::{invalid, Result};

/// `C(n, k)`, or `None` on overflow. `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Like [`binomial`] but with signed-style arguments that may go negative
/// (treated as zero), as used by closed forms such as `C(n-d-s+1, k-d)`.
pub fn binomial_i(n: i64, k: i64) -> Result<u64> {
    if n < 0 || k < 0 {
        return Ok(0);
    }
    binomial(n as u64, k as u64).ok_or_else(|| invalid(format!("C({n}, {k}) overflows u64")))
}

/// Position of a sorted subset in the lexicographic list of all
/// `subset.len()`-subsets of `0..n`.
pub fn rank_subset(subset: &[usize], n: usize) -> usize {
    let k = subset.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (i, &v) in subset.iter().enumerate() {
        for skipped in prev..v {
            rank += binomial((n - skipped - 1) as u64, (k - i - 1) as u64).unwrap() as usize;
        }
        prev = v + 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(6, 3), Some(20));
        assert_eq!(binomial(5, 0), Some(1));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(200, 100), None);
        assert_eq!(binomial_i(-1, 2).unwrap(), 0);
    }

    #[test]
    fn rank_matches_lexicographic_position() {
        for (pos, s) in (0..7).combinations(3).enumerate() {
            assert_eq!(rank_subset(&s, 7), pos);
        }
        assert_eq!(rank_subset(&[], 4), 0);
    }
}
