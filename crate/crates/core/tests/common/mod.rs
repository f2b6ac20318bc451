#![allow(dead_code)]

use qcx_core::{IntBijection, MonotoneSeq};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shuffled window of width `1..=max_width` starting near the origin.
pub fn random_tail(rng: &mut impl Rng, max_width: i64) -> IntBijection {
    let w = rng.gen_range(1..=max_width);
    let lo = rng.gen_range(-5..=5);
    let mut v: Vec<i64> = (lo..lo + w).collect();
    v.shuffle(rng);
    IntBijection::identity_tail(lo, v).unwrap()
}

/// Increasing sequence with gaps in `[0.5, 3]` and slopes in `[0.5, 2]`.
pub fn random_monotone(rng: &mut impl Rng, max_width: i64) -> MonotoneSeq {
    let w = rng.gen_range(1..=max_width);
    let lo = rng.gen_range(-4..=2);
    let mut x = rng.gen_range(-3.0..3.0);
    let values = (0..w)
        .map(|_| {
            let v = x;
            x += rng.gen_range(0.5..3.0);
            v
        })
        .collect();
    MonotoneSeq::new(lo, values, rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0)).unwrap()
}

pub fn six_periodic() -> IntBijection {
    IntBijection::periodic(vec![0, 1, -4, 0, 1, -4]).unwrap()
}
