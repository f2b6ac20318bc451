mod common;

use common::{random_monotone, random_tail, rng, six_periodic};
use qcx_core::seqcore::{
    find_split_decomposition, m_ratio, splits_interval, three_point_lambda, LimitClass,
};
use qcx_core::{IntBijection, MonotoneSeq};

/// Plain triple loop over `n ≤ m < k` in `[lo, hi]`.
fn brute_three_point(a: &IntBijection, lo: i64, hi: i64) -> f64 {
    let mut best: f64 = 0.0;
    for n in lo..=hi {
        for m in n..=hi {
            for k in m + 1..=hi {
                let r = (a.value(n) - a.value(m)).abs() as f64 / (a.value(n) - a.value(k)).abs() as f64;
                best = best.max(r);
            }
        }
    }
    best
}

fn brute_m(e: &MonotoneSeq, horizon: i64) -> f64 {
    let mut best: f64 = 1.0;
    for n in e.lo - horizon..=e.hi + horizon {
        for k in 1..=horizon {
            let r = (e.value(n + k) - e.value(n)) / (e.value(n) - e.value(n - k));
            best = best.max(r).max(1.0 / r);
        }
    }
    best
}

#[test]
fn three_point_matches_brute_force() {
    let mut rng = rng(11);
    for _ in 0..100 {
        let a = random_tail(&mut rng, 12);
        let (lo, hi) = a.window();
        let r = three_point_lambda(&a, 40).unwrap();
        assert_eq!(r.lambda_empirical, brute_three_point(&a, lo - 40, hi + 40), "{a:?}");
        assert!(r.lambda_certified >= r.lambda_empirical);
    }
}

#[test]
fn swap_constant_and_witness() {
    let r = three_point_lambda(&IntBijection::swap(0, 1), 50).unwrap();
    assert_eq!(r.lambda_empirical, 2.0);
    assert_eq!(r.witness, (-1, 0, 1));
}

#[test]
fn symmetric_condition_follows() {
    // |a_k − a_m| / |a_k − a_n| ≤ λ + 1 for n < m ≤ k
    let mut rng = rng(12);
    for _ in 0..30 {
        let a = random_tail(&mut rng, 10);
        let lambda = three_point_lambda(&a, 40).unwrap().lambda_certified;
        let (lo, hi) = a.window();
        for n in lo - 12..=hi + 12 {
            for m in n + 1..=hi + 12 {
                for k in m..=hi + 12 {
                    let r = (a.value(k) - a.value(m)).abs() as f64 / (a.value(k) - a.value(n)).abs() as f64;
                    assert!(r <= lambda + 1.0, "{a:?} at ({n}, {m}, {k})");
                }
            }
        }
    }
}

#[test]
fn periodic_constant() {
    let a = six_periodic();
    let r = three_point_lambda(&a, 60).unwrap();
    assert_eq!(r.lambda_empirical, brute_three_point(&a, -60, 60));
    assert_eq!(r.lambda_empirical, 5.0);
}

#[test]
fn m_ratio_matches_brute_force() {
    let mut rng = rng(13);
    for _ in 0..100 {
        let e = random_monotone(&mut rng, 12);
        assert_eq!(m_ratio(&e, 40).m, brute_m(&e, 40), "{e:?}");
    }
}

#[test]
fn m_ratio_steep_window() {
    let e = MonotoneSeq::new(0, vec![0.0, 1.0, 10.0], 1.0, 1.0).unwrap();
    assert_eq!(m_ratio(&e, 100).m, brute_m(&e, 100));
    // (10 − 1)/(1 − 0) at n = 1
    assert_eq!(m_ratio(&e, 100).m, 9.0);
}

#[test]
fn m_ratio_affine_invariance() {
    let mut rng = rng(14);
    for _ in 0..20 {
        let e = random_monotone(&mut rng, 10);
        let scaled = e.affine(3.7, -12.25).unwrap();
        let (m0, m1) = (m_ratio(&e, 40).m, m_ratio(&scaled, 40).m);
        assert!((m0 - m1).abs() <= 1e-12 * m0, "{m0} vs {m1}");
    }
}

#[test]
fn periodic_example_is_not_splittable() {
    let a = six_periodic();
    assert!(a.is_bijective());
    assert_eq!(a.limit_classification(), LimitClass::SameDirection);
    for c in [1, 2, 6, 12, 100, 1000] {
        assert!(find_split_decomposition(&a, c, 40).is_none(), "c_max {c}");
    }
    for k in 0..6 {
        for l in k..6 {
            assert!(!splits_interval(&a, k, l));
        }
    }
}

#[test]
fn decomposition_blocks_split_and_map_onto_intervals() {
    let mut rng = rng(15);
    for _ in 0..100 {
        let a = random_tail(&mut rng, 12);
        let d = find_split_decomposition(&a, 30, 20).unwrap();
        for (s, e) in d.blocks() {
            assert!(splits_interval(&a, s, e));
            let mut img: Vec<i64> = (s..=e).map(|n| a.value(n)).collect();
            img.sort_unstable();
            assert!(img.windows(2).all(|w| w[1] == w[0] + 1));
        }
    }
}
