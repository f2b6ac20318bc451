//! Automorphisms of the lattice `{eⁿ}`. They are handled through
//! `aₙ = log f(eⁿ)`: the strip map built for `{aₙ}` with `δ = π` is
//! periodized in the imaginary direction and pushed down by `exp`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;
use crate::mapcore::{MapExpr, Point};
use crate::permbuild::PermStrategy;
use crate::seqcore::{IntBijection, LimitClass};
use crate::splitflow::{certify, extend_with_lambda};

/// Extra reach beyond the window when measuring `λ_b`.
pub const EXP_HORIZON: i64 = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpLatticeReport {
    /// Three-point constant of `bₙ = e^{aₙ}`.
    pub lambda_b: f64,
    /// `log(λ_b + 1)`, the largest inversion gap allowed in `{aₙ}`.
    pub c_lambda: f64,
    /// `c_λ + 1`, a three-point constant for `{aₙ}`.
    pub lambda_a: f64,
    pub tends_to_zero: bool,
}

/// Measures the exponential-scale constants of `a`. Sequences with
/// `e^{aₙ} ↛ 0` as `n → −∞` are rejected.
pub fn log_conjugate(a: &IntBijection) -> Result<ExpLatticeReport> {
    if !a.is_bijective() {
        return Err(Error::NotBijective);
    }
    let tends_to_zero = a.limit_classification() == LimitClass::SameDirection;
    if !tends_to_zero {
        return Err(Error::NotTendingToZero);
    }
    let lambda_b = exp_three_point(a, EXP_HORIZON);
    let c_lambda = math::ln(lambda_b + 1.0);
    Ok(ExpLatticeReport { lambda_b, c_lambda, lambda_a: c_lambda + 1.0, tends_to_zero })
}

/// `max |bₙ − b_m| / |bₙ − b_k|` over `n ≤ m < k` in
/// `[lo − horizon, hi + horizon]`, with `bₙ = e^{aₙ}`.
pub fn exp_three_point(a: &IntBijection, horizon: i64) -> f64 {
    let (lo, hi) = a.window();
    let (lo, hi) = (lo.min(0) - horizon, hi.max(0) + horizon);
    let b: alloc::vec::Vec<f64> = (lo..=hi).map(|n| math::exp(a.value(n) as f64)).collect();
    let mut best: f64 = 0.0;
    for (i, &bn) in b.iter().enumerate() {
        let mut near: f64 = 0.0;
        for &bk in &b[i + 1..] {
            best = best.max(near / (bn - bk).abs());
            near = near.max((bn - bk).abs());
        }
    }
    best
}

/// Whether every inversion `k < ℓ`, `a_ℓ < a_k` within the horizon has
/// `a_k − a_ℓ ≤ log(λ_b + 1)`.
pub fn check_inversion_gaps(a: &IntBijection, lambda_b: f64, horizon: i64) -> bool {
    let (lo, hi) = a.window();
    let (lo, hi) = (lo.min(0) - horizon, hi.max(0) + horizon);
    let cap = math::ln(lambda_b + 1.0);
    (lo..=hi).all(|k| {
        let ak = a.value(k);
        (k + 1..=hi).all(|l| {
            let al = a.value(l);
            al > ak || (ak - al) as f64 <= cap
        })
    })
}

/// Strip map `g` for the log-conjugated sequence, identity on `|Im z| ≥ π`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpLatticeMap {
    pub g: MapExpr,
    pub a: IntBijection,
    pub report: ExpLatticeReport,
    /// Three-point constant handed to the splitter.
    pub lambda: f64,
}

pub fn extend_exp_automorphism(a: &IntBijection) -> Result<ExpLatticeMap> {
    let report = log_conjugate(a)?;
    // the measured λ_b is horizon-truncated, so never go below the certificate
    let lambda = report.lambda_a.max(certify(a)?.lambda_certified);
    let g = extend_with_lambda(a, Some(lambda), PI, PermStrategy::default())?;
    Ok(ExpLatticeMap { g, a: a.clone(), report, lambda })
}

impl ExpLatticeMap {
    /// Periodized lift `F̃(z + 2nπi) = g(z) + 2nπi`.
    pub fn lift_eval(&self, z: Point) -> Point {
        let n = math::floor((z.im + PI) / (2.0 * PI));
        let shift = Point::new(0.0, 2.0 * PI * n);
        self.g.eval(z - shift) + shift
    }

    /// `exp ∘ g ∘ log` on the punctured plane, with the principal branch.
    pub fn eval(&self, w: Point) -> Result<Point> {
        if w.re == 0.0 && w.im == 0.0 {
            return Err(Error::Puncture);
        }
        let z = log(w);
        let gz = self.g.eval(z);
        // the seam lies where g is the identity; skip the round trip
        if gz == z {
            return Ok(w);
        }
        Ok(exp(gz))
    }
}

pub fn exp_eval(map: &ExpLatticeMap, w: Point) -> Result<Point> {
    map.eval(w)
}

/// Principal logarithm, imaginary part in `(−π, π]`.
pub fn log(w: Point) -> Point {
    Point::new(math::ln(math::hypot(w.re, w.im)), math::atan2(w.im, w.re))
}

pub fn exp(z: Point) -> Point {
    let r = math::exp(z.re);
    Point::new(r * math::cos(z.im), r * math::sin(z.im))
}
