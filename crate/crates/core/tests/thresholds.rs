//! Exhaustive thresholds against a slow reference search that builds every
//! hypergraph explicitly and never prunes.

use hypermatch::hypercore::{min_d_degree, threshold_hypergraph, Hypergraph, VertexWeighting};
use hypermatch::optmatch::{fractional_matching_number, matching_number};
use hypermatch::rational::{self, ratio, Rational};
use hypermatch::thresholds::{brute_force_threshold, reduce_fractional_instance, Mode, ThresholdQuery, DEFAULT_BUDGET};
use itertools::Itertools;
use proptest::prelude::*;

fn reference(mode: Mode, k: usize, n: usize, d: usize, s: &Rational) -> u64 {
    let slots: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let mut best = 0;
    for mask in 0u32..1 << slots.len() {
        let edges = (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i].clone());
        let h = Hypergraph::new(k, n, edges).unwrap();
        let ok = match mode {
            Mode::Integral => rational::int(matching_number(&h).0 as i64) < *s,
            Mode::Fractional => fractional_matching_number(&h).unwrap() < *s,
        };
        if ok {
            best = best.max(min_d_degree(&h, d).unwrap() as u64 + 1);
        }
    }
    best
}

fn small_queries() -> Vec<ThresholdQuery> {
    let mut out = Vec::new();
    for (k, n) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)] {
        for d in 0..k {
            for s in 1..=n / k {
                out.push(ThresholdQuery::integral(k, n, d, s).unwrap());
            }
            for (p, q) in [(1, 2), (1, 1), (3, 2), (2, 1), (5, 2)] {
                let s = ratio(p, q);
                if s <= ratio(n as i64, k as i64) {
                    out.push(ThresholdQuery::fractional(k, n, d, s).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn matches_reference_search() {
    for q in small_queries() {
        let fast = brute_force_threshold(&q, DEFAULT_BUDGET).unwrap();
        assert_eq!(fast.value, reference(q.mode, q.k, q.n, q.d, &q.s), "{q:?}");
    }
}

#[test]
fn witnesses_satisfy_their_constraint() {
    for q in small_queries() {
        let r = brute_force_threshold(&q, DEFAULT_BUDGET).unwrap();
        assert_eq!(min_d_degree(&r.witness, q.d).unwrap() as u64, r.value - 1);
        assert!(q.admits(&r.witness).unwrap(), "{q:?}");
        assert_eq!(brute_force_threshold(&q, DEFAULT_BUDGET).unwrap().witness, r.witness);
    }
}

#[test]
fn thresholds_grow_with_s() {
    for (k, n) in [(2, 6), (3, 6), (2, 5)] {
        for d in 0..k {
            let values: Vec<u64> = (1..=n / k)
                .map(|s| brute_force_threshold(&ThresholdQuery::integral(k, n, d, s).unwrap(), DEFAULT_BUDGET).unwrap().value)
                .collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]), "({k},{n},{d}): {values:?}");
        }
    }
}

#[test]
fn fractional_never_exceeds_integral() {
    for (k, n) in [(2, 4), (2, 6), (3, 6)] {
        for d in 0..k {
            for s in 1..=n / k {
                let m = brute_force_threshold(&ThresholdQuery::integral(k, n, d, s).unwrap(), DEFAULT_BUDGET).unwrap();
                let f = brute_force_threshold(&ThresholdQuery::fractional(k, n, d, rational::int(s as i64)).unwrap(), DEFAULT_BUDGET)
                    .unwrap();
                assert!(f.value <= m.value, "({k},{n},{d},{s})");
            }
        }
    }
}

#[test]
fn link_reduction_inequality_on_small_instances() {
    for (k, n) in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6)] {
        let s = ratio(n as i64, k as i64);
        for d in 1..k {
            let left = brute_force_threshold(&ThresholdQuery::fractional(k, n, d, s.clone()).unwrap(), DEFAULT_BUDGET).unwrap();
            let right =
                brute_force_threshold(&ThresholdQuery::fractional(k - d, n - d, 0, s.clone()).unwrap(), DEFAULT_BUDGET).unwrap();
            assert!(left.value <= right.value, "({k},{n},{d}): {} > {}", left.value, right.value);
        }
    }
}

#[test]
fn desk_scale_values() {
    let run = |q: ThresholdQuery| brute_force_threshold(&q, DEFAULT_BUDGET).unwrap().value;
    assert_eq!(run(ThresholdQuery::integral(3, 6, 0, 2).unwrap()), 11);
    assert_eq!(run(ThresholdQuery::integral(3, 6, 1, 2).unwrap()), 6);
    assert_eq!(run(ThresholdQuery::fractional(3, 6, 1, ratio(2, 1)).unwrap()), 5);
    assert_eq!(run(ThresholdQuery::fractional(3, 6, 0, ratio(2, 1)).unwrap()), 11);
    assert_eq!(run(ThresholdQuery::fractional(2, 5, 0, ratio(2, 1)).unwrap()), 5);
}

fn weighting(max_n: usize) -> impl Strategy<Value = VertexWeighting> {
    (3usize..=max_n, 1i64..=10).prop_flat_map(|(n, q)| {
        proptest::collection::vec(0..=q, n)
            .prop_map(move |ps| VertexWeighting::new(ps.iter().map(|&p| ratio(p, q)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn remap_preserves_threshold_hypergraph(w in weighting(9), k in 2usize..=3, d in 1usize..=2) {
        prop_assume!(d < k && k <= w.len());
        match reduce_fractional_instance(&w, k, d) {
            Ok(r) => {
                prop_assert_eq!(threshold_hypergraph(&r.averaged, k).unwrap(), threshold_hypergraph(&r.remapped, k).unwrap());
                prop_assert!(r.core.iter().all(|&v| r.remapped.get(v) == &rational::zero()));
                prop_assert!(r.link_cover().covers(&r.link().unwrap()));
            }
            Err(_) => prop_assert!(r_base(&w, d) * rational::int(k as i64) >= rational::one()),
        }
    }
}

fn r_base(w: &VertexWeighting, d: usize) -> Rational {
    let mut ws = w.weights().to_vec();
    ws.sort();
    ws[..d].iter().fold(rational::zero(), |a, x| a + x) / rational::int(d as i64)
}
