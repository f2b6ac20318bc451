//! Quasisymmetric embeddings `ℤ → ℝ`: the M-ratio test on the image, a
//! Beurling–Ahlfors extension of the piecewise-linear interpolant, bounds on
//! the inverse assignment, and the composed plane map.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mapcore::{numeric_beltrami, BeltramiSample, MapExpr, Point};
use crate::seqcore::{m_ratio, IntBijection, MonotoneSeq};
use crate::splitflow::extend_automorphism;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ImageReport {
    pub m_constant: f64,
    pub horizon: i64,
    pub witness: (i64, i64),
    pub pass: bool,
}

pub fn characterize_image(e: &MonotoneSeq, horizon: i64, ceiling: f64) -> ImageReport {
    let r = m_ratio(e, horizon);
    ImageReport { m_constant: r.m, horizon, witness: r.witness, pass: r.m <= ceiling }
}

/// Increasing piecewise-linear map of ℝ through `(breakpoints[i], values[i])`
/// with affine tails.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PiecewiseLinearHomeo {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
    pub left_slope: f64,
    pub right_slope: f64,
}

impl PiecewiseLinearHomeo {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, left_slope: f64, right_slope: f64) -> Result<Self> {
        let h = PiecewiseLinearHomeo { breakpoints, values, left_slope, right_slope };
        h.validate()?;
        Ok(h)
    }

    pub fn identity() -> Self {
        PiecewiseLinearHomeo { breakpoints: alloc::vec![0.0], values: alloc::vec![0.0], left_slope: 1.0, right_slope: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let (b, v) = (&self.breakpoints, &self.values);
        if b.is_empty() || b.len() != v.len() {
            return Err(Error::SizeMismatch(format!("{} breakpoints, {} values", b.len(), v.len())));
        }
        let increasing = |xs: &[f64]| xs.iter().all(|x| x.is_finite()) && xs.windows(2).all(|w| w[0] < w[1]);
        if !increasing(b) || !increasing(v) {
            return Err(Error::Malformed("breakpoints and values must increase strictly".into()));
        }
        let slope_ok = |s: f64| s > 0.0 && s.is_finite();
        if !slope_ok(self.left_slope) || !slope_ok(self.right_slope) {
            return Err(Error::Malformed("tail slopes must be positive and finite".into()));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (b, v) = (&self.breakpoints, &self.values);
        let last = b.len() - 1;
        if x <= b[0] {
            return v[0] + (x - b[0]) * self.left_slope;
        }
        if x >= b[last] {
            return v[last] + (x - b[last]) * self.right_slope;
        }
        let i = b.partition_point(|&p| p <= x) - 1;
        v[i] + (x - b[i]) * (v[i + 1] - v[i]) / (b[i + 1] - b[i])
    }

    pub fn inverse(&self, y: f64) -> f64 {
        let swapped = PiecewiseLinearHomeo {
            breakpoints: self.values.clone(),
            values: self.breakpoints.clone(),
            left_slope: 1.0 / self.left_slope,
            right_slope: 1.0 / self.right_slope,
        };
        swapped.eval(y)
    }

    /// `∫ₐᵇ h`, exact up to rounding: trapezoids between consecutive kinks.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return -self.integral(b, a);
        }
        let bp = &self.breakpoints;
        let start = bp.partition_point(|&p| p <= a);
        let end = bp.partition_point(|&p| p < b);
        let mut total = 0.0;
        let (mut x0, mut y0) = (a, self.eval(a));
        for &x in &bp[start..end] {
            let y = self.eval(x);
            total += 0.5 * (x - x0) * (y + y0);
            (x0, y0) = (x, y);
        }
        total + 0.5 * (b - x0) * (self.eval(b) + y0)
    }

    /// Mean of `h` over `[a, b]`. Dividing by the rounded length keeps
    /// intervals of a few ulps accurate.
    pub fn mean(&self, a: f64, b: f64) -> f64 {
        if a == b {
            return self.eval(a);
        }
        self.integral(a, b) / (b - a)
    }
}

/// `h(n) = aₙ` at every integer, linear in between, following the tails.
pub fn pl_interpolant(e: &MonotoneSeq) -> PiecewiseLinearHomeo {
    PiecewiseLinearHomeo {
        breakpoints: (e.lo..=e.hi).map(|n| n as f64).collect(),
        values: e.values.clone(),
        left_slope: e.left_slope,
        right_slope: e.right_slope,
    }
}

/// Beurling–Ahlfors extension of `h`, symmetric under conjugation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BAMap {
    pub h: PiecewiseLinearHomeo,
}

impl BAMap {
    pub fn new(h: PiecewiseLinearHomeo) -> Self {
        BAMap { h }
    }

    /// With `α` and `β` the means of `h` over `[x, x + y]` and `[x − y, x]`,
    /// `F(x + iy) = (α + β)/2 + i(α − β)` for `y > 0`, which makes the
    /// extension of the identity the identity.
    pub fn eval(&self, z: Point) -> Point {
        if z.im == 0.0 {
            return Point::real(self.h.eval(z.re));
        }
        if z.im < 0.0 {
            return self.eval(z.conj()).conj();
        }
        let (x, y) = (z.re, z.im);
        let alpha = self.h.mean(x, x + y);
        let beta = self.h.mean(x - y, x);
        Point::new(0.5 * (alpha + beta), alpha - beta)
    }

    pub fn numeric_beltrami(&self, z: Point, h: f64) -> Result<BeltramiSample> {
        numeric_beltrami(|p| self.eval(p), z, h)
    }
}

pub fn ba_eval(map: &BAMap, z: Point) -> Point {
    map.eval(z)
}

/// `ba ∘ auto`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EmbeddingMap {
    pub ba: BAMap,
    pub auto: MapExpr,
}

impl EmbeddingMap {
    pub fn eval(&self, z: Point) -> Point {
        self.ba.eval(self.auto.eval(z))
    }
}

/// Extends `f(n) = a_{σ(n)}` where `E = {aₙ}` is the image and `σ` the
/// integer automorphism.
pub fn extend_embedding(e: &MonotoneSeq, assignment: &IntBijection, delta: f64) -> Result<EmbeddingMap> {
    e.validate()?;
    let auto = extend_automorphism(assignment, delta)?;
    Ok(EmbeddingMap { ba: BAMap::new(pl_interpolant(e)), auto })
}

/// Measured `μ = η′(1)` for `g(a_{σ(n)}) = n`: the largest
/// `|g(x) − g(y)| / |g(x) − g(z)|` over `x, y, z ∈ E` with
/// `|x − y| ≤ |x − z|`, for indices within `horizon` of both windows.
pub fn inverse_mu(e: &MonotoneSeq, sigma: &IntBijection, horizon: i64) -> f64 {
    let (slo, shi) = sigma.window();
    let lo = e.lo.min(slo) - horizon;
    let hi = e.hi.max(shi) + horizon;
    let inv = sigma.inverse();
    let pts: Vec<(f64, f64)> = (lo..=hi).map(|n| (e.value(n), inv.value(n) as f64)).collect();
    let mut mu: f64 = 1.0;
    for (i, &(x, gx)) in pts.iter().enumerate() {
        for (j, &(y, gy)) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            let dy = (x - y).abs();
            let num = (gx - gy).abs();
            for (k, &(z, gz)) in pts.iter().enumerate() {
                if k != i && dy <= (x - z).abs() {
                    mu = mu.max(num / (gx - gz).abs());
                }
            }
        }
    }
    mu
}

/// Extremes of `|g(aₙ) − g(aₙ₊ₖ)|` for one span `k` against the bounds
/// `(k − 1)/2μ` and `2μk`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpanCheck {
    pub k: i64,
    pub lower: f64,
    pub min: f64,
    pub max: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "check", rename_all = "snake_case"))]
pub enum BoundViolation {
    Adjacent { n: i64, gap: f64 },
    Span { n: i64, k: i64, gap: f64 },
    Ratio { n: i64, k: i64, ratio: f64 },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InverseBoundsReport {
    pub mu: f64,
    pub adjacent_max: f64,
    pub span_checks: Vec<SpanCheck>,
    /// Smallest and largest `|g(aₙ₊ₖ) − g(aₙ)| / |g(aₙ) − g(aₙ₋ₖ)|`.
    pub ratio_range: (f64, f64),
    pub l_constant: f64,
    pub violations: Vec<BoundViolation>,
}

impl InverseBoundsReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the adjacent, span and ratio bounds for `g_values[i] = g(a_{lo+i})`
/// with `lo` taken from `e`.
pub fn inverse_bounds_report(e: &MonotoneSeq, g_values: &[i64], mu: f64) -> InverseBoundsReport {
    let g: Vec<f64> = g_values.iter().map(|&v| v as f64).collect();
    let len = g.len();
    let at = |i: usize| e.lo + i as i64;
    let l_constant = 8.0 * mu * mu;
    let mut violations = Vec::new();

    let mut adjacent_max: f64 = 0.0;
    for i in 1..len {
        let gap = (g[i] - g[i - 1]).abs();
        adjacent_max = adjacent_max.max(gap);
        if !(gap < 2.0 * mu) {
            violations.push(BoundViolation::Adjacent { n: at(i - 1), gap });
        }
    }

    let mut span_checks = Vec::new();
    for k in 2..len {
        let lower = (k as f64 - 1.0) / (2.0 * mu);
        let upper = 2.0 * mu * k as f64;
        let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
        for i in 0..len - k {
            let gap = (g[i + k] - g[i]).abs();
            lo = lo.min(gap);
            hi = hi.max(gap);
            if !(lower < gap && gap < upper) {
                violations.push(BoundViolation::Span { n: at(i), k: k as i64, gap });
            }
        }
        span_checks.push(SpanCheck { k: k as i64, lower, min: lo, max: hi, upper });
    }

    let mut ratio_range = (f64::INFINITY, 0.0_f64);
    for k in 1..len {
        for i in k..len.saturating_sub(k) {
            let ratio = (g[i + k] - g[i]).abs() / (g[i] - g[i - k]).abs();
            ratio_range = (ratio_range.0.min(ratio), ratio_range.1.max(ratio));
            if !(1.0 / l_constant < ratio && ratio < l_constant) {
                violations.push(BoundViolation::Ratio { n: at(i), k: k as i64, ratio });
            }
        }
    }
    if ratio_range.0 > ratio_range.1 {
        ratio_range = (1.0, 1.0);
    }

    InverseBoundsReport { mu, adjacent_max, span_checks, ratio_range, l_constant, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        a.dist(b) <= tol
    }

    #[test]
    fn interpolant_arithmetic() {
        let e = MonotoneSeq::new(0, vec![0.0, 1.0, 3.0], 1.0, 1.0).unwrap();
        let h = pl_interpolant(&e);
        assert_eq!(h.eval(1.5), 2.0);
        assert_eq!(h.eval(-2.0), -2.0);
        assert_eq!(h.eval(4.0), 5.0);
        assert_eq!(h.inverse(2.0), 1.5);
        assert_eq!(h.integral(0.0, 2.0), 0.5 + 2.0);
        assert_eq!(h.integral(2.0, 0.0), -2.5);
    }

    #[test]
    fn ba_of_identity_and_doubling() {
        let id = BAMap::new(PiecewiseLinearHomeo::identity());
        for z in [Point::new(0.3, 0.7), Point::new(-2.0, -1.5), Point::new(5.0, 0.0)] {
            assert!(close(id.eval(z), z, 1e-12));
        }
        let double = BAMap::new(pl_interpolant(&MonotoneSeq::linear(2.0, -2, 2).unwrap()));
        let z = Point::new(0.75, 1.25);
        // a linear boundary map extends to the same complex scaling
        assert!(close(double.eval(z), z * 2.0, 1e-12));
    }

    #[test]
    fn ba_matches_values_on_integers() {
        let e = MonotoneSeq::new(0, vec![0.0, 1.0, 3.0], 1.0, 1.0).unwrap();
        let f = BAMap::new(pl_interpolant(&e));
        for (n, a) in [(0, 0.0), (1, 1.0), (2, 3.0)] {
            assert!(close(f.eval(Point::real(n as f64)), Point::real(a), 1e-12));
        }
        let z = Point::new(0.4, 0.9);
        assert!(close(f.eval(z.conj()), f.eval(z).conj(), 1e-12));
    }

    #[test]
    fn ba_is_stable_a_few_ulps_off_the_axis() {
        let e = MonotoneSeq::new(1, vec![2.4, 3.7, 4.3], 0.8, 1.1).unwrap();
        let f = BAMap::new(pl_interpolant(&e));
        let z = Point::new(5.000000000000012, 4.9e-15);
        assert!(close(f.eval(z), Point::real(e.value(5)), 1e-12));
    }

    #[test]
    fn embedding_examples() {
        let ints = MonotoneSeq::linear(1.0, -3, 3).unwrap();
        let f = extend_embedding(&ints, &IntBijection::identity(), 1.0).unwrap();
        let z = Point::new(0.3, -0.4);
        assert!(close(f.eval(z), z, 1e-12));

        let evens = MonotoneSeq::linear(2.0, -3, 3).unwrap();
        let f = extend_embedding(&evens, &IntBijection::identity(), 1.0).unwrap();
        assert!(close(f.eval(Point::real(3.0)), Point::real(6.0), 1e-12));
        assert!(close(f.eval(Point::new(0.0, 1.0)), Point::new(0.0, 2.0), 1e-12));

        let f = extend_embedding(&evens, &IntBijection::swap(0, 1), 1.0).unwrap();
        assert!(close(f.eval(Point::real(0.0)), Point::real(2.0), 1e-8));
        assert!(close(f.eval(Point::real(1.0)), Point::real(0.0), 1e-8));
    }

    #[test]
    fn image_report() {
        let r = characterize_image(&MonotoneSeq::linear(2.0, 0, 3).unwrap(), 40, 1.0);
        assert_eq!(r.m_constant, 1.0);
        assert!(r.pass);
        let steep = MonotoneSeq::new(0, vec![0.0, 1.0, 100.0], 1.0, 1.0).unwrap();
        assert!(!characterize_image(&steep, 200, 10.0).pass);
    }

    #[test]
    fn identity_inverse_bounds() {
        let e = MonotoneSeq::linear(1.0, 0, 9).unwrap();
        let g: Vec<i64> = (0..10).collect();
        let r = inverse_bounds_report(&e, &g, 1.0);
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.l_constant, 8.0);
        assert_eq!(r.adjacent_max, 1.0);
        assert_eq!(inverse_mu(&e, &IntBijection::identity(), 20), 1.0);
    }

    #[test]
    fn jump_breaks_adjacent_bound() {
        let e = MonotoneSeq::linear(1.0, 0, 5).unwrap();
        let g = [0, 1, 2, 12, 13, 14];
        let r = inverse_bounds_report(&e, &g, 1.0);
        assert!(r.violations.contains(&BoundViolation::Adjacent { n: 2, gap: 10.0 }));
    }
}
