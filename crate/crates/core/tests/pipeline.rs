mod common;

use common::{random_tail, rng};
use proptest::prelude::*;
use qcx_core::mapcore::{scan_distortion, DEFAULT_FD_STEP};
use qcx_core::permbuild::{realize_block_permutation, BlockPermutation, PermStrategy};
use qcx_core::seqcore::{splits_interval, three_point_lambda};
use qcx_core::splitflow::{certify, extend_automorphism, make_splittable, verify_extension};
use qcx_core::{IntBijection, Point, Rect};
use rand::seq::SliceRandom;
use rand::Rng as _;

#[test]
fn splitting_bound_and_step_claims() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let a = random_tail(&mut rng, 14);
        let lambda = certify(&a).unwrap().lambda_certified;
        let s = make_splittable(&a, lambda, 1.0).unwrap();
        assert!(s.decomposition.bound_c as f64 <= 2.0 * lambda + 3.0, "{a:?}");
        assert!(s.steps.iter().all(|t| t.claim_bound_ok && t.anchor_gap as f64 <= lambda + 1.0));
        for (p, q) in s.decomposition.blocks() {
            assert!(splits_interval(&s.b, p, q));
        }
        // F₁ carries aₙ to bₙ
        let (lo, hi) = a.window();
        for n in lo - 3..=hi + 3 {
            let w = s.f1.eval(Point::real(a.value(n) as f64));
            assert!(w.dist(Point::real(s.b.value(n) as f64)) < 1e-9, "{a:?} at {n}");
        }
    }
}

#[test]
fn extensions_pass_verification() {
    let mut rng = rng(32);
    for _ in 0..200 {
        let a = random_tail(&mut rng, 14);
        let f = extend_automorphism(&a, 1.0).unwrap();
        let r = verify_extension(&f, &a, 30, 1.0, 1e-9);
        assert!(r.pass, "{a:?}: {r:?}");
    }
}

#[test]
fn bound_dominates_fine_scan() {
    let mut rng = rng(33);
    for _ in 0..40 {
        let a = random_tail(&mut rng, 8);
        let delta = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let f = extend_automorphism(&a, delta).unwrap();
        let (lo, hi) = a.window();
        let region = Rect::from_bounds((lo - 1) as f64, (hi + 1) as f64, -delta, delta).unwrap();
        let scan = scan_distortion(|z| f.eval(z), region, 64, DEFAULT_FD_STEP);
        assert!(f.dilatation_bound() >= scan.max_k - 1e-6, "{a:?}: {scan:?}");
    }
}

#[test]
fn mirrored_inputs_end_with_negation() {
    let a = IntBijection::identity_tail(-1, vec![0, -1, 2, 1]).unwrap().negated();
    let f = extend_automorphism(&a, 1.0).unwrap();
    let r = verify_extension(&f, &a, 30, 1.0, 1e-9);
    assert!(r.pass, "{r:?}");
    assert_eq!(f.eval(Point::new(7.5, 3.0)), Point::new(-7.5, -3.0));
}

#[test]
fn identity_pipelines_are_conformal() {
    for a in [
        IntBijection::identity(),
        IntBijection::identity_tail(-3, vec![-3, -2, -1, 0]).unwrap(),
    ] {
        let f = extend_automorphism(&a, 1.0).unwrap();
        assert_eq!(f.dilatation_bound(), 1.0);
        assert!(f.is_identity());
    }
}

#[test]
fn lane_and_transposition_permutations_hit_integers() {
    let mut rng = rng(34);
    for _ in 0..200 {
        let w = rng.gen_range(1..=10);
        let lo = rng.gen_range(-6..=6);
        let mut v: Vec<i64> = (lo..lo + w).collect();
        v.shuffle(&mut rng);
        let delta = rng.gen_range(0.25..2.0);
        let p = BlockPermutation::new(lo, v.clone(), delta).unwrap();
        for strategy in [PermStrategy::Lanes, PermStrategy::Transpositions] {
            let f = realize_block_permutation(&p, strategy).unwrap();
            for (j, &t) in v.iter().enumerate() {
                let got = f.eval(Point::real((lo + j as i64) as f64));
                assert!(got.dist(Point::real(t as f64)) < 1e-9, "{strategy:?} {v:?}");
            }
            // identity away from the block rectangle
            let z = Point::new(lo as f64 + 0.3, delta * 1.01);
            assert_eq!(f.eval(z), z);
            assert_eq!(f.eval(Point::real((lo - 1) as f64)), Point::real((lo - 1) as f64));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extension_interpolates(values in Just(()).prop_flat_map(|_| (1usize..10).prop_flat_map(|w| Just((0..w as i64).collect::<Vec<_>>()).prop_shuffle())), lo in -4i64..4) {
        let v: Vec<i64> = values.iter().map(|x| x + lo).collect();
        let a = IntBijection::identity_tail(lo, v).unwrap();
        let f = extend_automorphism(&a, 1.0).unwrap();
        for n in lo - 2..lo + 12 {
            prop_assert!(f.eval(Point::real(n as f64)).dist(Point::real(a.value(n) as f64)) < 1e-9);
        }
        let z = Point::new(0.37, 0.21);
        prop_assert!(f.inverse_eval(f.eval(z)).dist(z) < 1e-9);
        prop_assert!(three_point_lambda(&a, 40).unwrap().lambda_certified >= 1.0);
    }
}

#[test]
fn extension_restricted_to_integers_is_quasisymmetric() {
    use qcx_core::seqcore::qs_profile;
    let a = IntBijection::identity_tail(-2, vec![1, -2, 0, 2, -1]).unwrap();
    let f = extend_automorphism(&a, 1.0).unwrap();
    let xs: Vec<f64> = (-8..=8).map(|n| n as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(Point::real(x)).re).collect();
    let p = qs_profile(&xs, &ys).unwrap();
    assert!(p.envelope.iter().all(|&(_, rho)| rho.is_finite()));
    assert!(p.envelope.windows(2).all(|w| w[0].1 <= w[1].1));
}
