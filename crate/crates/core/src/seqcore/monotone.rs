use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Strictly increasing real sequence `{aₙ}` given on a window `[lo, hi]`
/// with affine tails of positive slope, so that `aₙ → ±∞` as `n → ±∞`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonotoneSeq {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<f64>,
    pub left_slope: f64,
    pub right_slope: f64,
}

impl MonotoneSeq {
    pub fn new(lo: i64, values: Vec<f64>, left_slope: f64, right_slope: f64) -> Result<Self> {
        let hi = lo + values.len() as i64 - 1;
        let s = MonotoneSeq { lo, hi, values, left_slope, right_slope };
        s.validate()?;
        Ok(s)
    }

    /// `aₙ = scale·n` viewed through the window `[lo, hi]`.
    pub fn linear(scale: f64, lo: i64, hi: i64) -> Result<Self> {
        let values = (lo..=hi).map(|n| scale * n as f64).collect();
        MonotoneSeq::new(lo, values, scale, scale)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() || self.hi - self.lo + 1 != self.values.len() as i64 {
            return Err(Error::Malformed(format!(
                "window [{}, {}] holds {} values",
                self.lo,
                self.hi,
                self.values.len()
            )));
        }
        if !self.values.iter().all(|v| v.is_finite()) {
            return Err(Error::Malformed("non-finite value".into()));
        }
        if !(self.left_slope > 0.0 && self.right_slope > 0.0)
            || !self.left_slope.is_finite()
            || !self.right_slope.is_finite()
        {
            return Err(Error::Malformed("tail slopes must be positive and finite".into()));
        }
        if !self.values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Malformed("values must be strictly increasing".into()));
        }
        Ok(())
    }

    pub fn value(&self, n: i64) -> f64 {
        if n < self.lo {
            self.values[0] + (n - self.lo) as f64 * self.left_slope
        } else if n > self.hi {
            self.values[self.values.len() - 1] + (n - self.hi) as f64 * self.right_slope
        } else {
            self.values[(n - self.lo) as usize]
        }
    }

    /// `α·aₙ + β`.
    pub fn affine(&self, alpha: f64, beta: f64) -> Result<Self> {
        MonotoneSeq::new(
            self.lo,
            self.values.iter().map(|v| alpha * v + beta).collect(),
            alpha * self.left_slope,
            alpha * self.right_slope,
        )
    }
}

/// Largest two-sided ratio `max(r, 1/r)` of `r = (aₙ₊ₖ − aₙ)/(aₙ − aₙ₋ₖ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MRatio {
    pub m: f64,
    pub witness: (i64, i64),
}

/// M-ratio over `n ∈ [lo − horizon, hi + horizon]`, `k ∈ [1, horizon]`.
///
/// Far from the window the affine tails make the ratio tend to the ratio of
/// the tail slopes; a horizon of at least `hi − lo` lets the scan see that
/// regime.
pub fn m_ratio(seq: &MonotoneSeq, horizon: i64) -> MRatio {
    let base = seq.lo - 2 * horizon;
    let vals: Vec<f64> = (base..=seq.hi + 2 * horizon).map(|n| seq.value(n)).collect();
    let h = horizon as usize;
    let mut best = MRatio { m: 1.0, witness: (seq.lo, 1) };
    for i in h..vals.len() - h {
        for k in 1..=h {
            let r = (vals[i + k] - vals[i]) / (vals[i] - vals[i - k]);
            let m = r.max(1.0 / r);
            if m > best.m {
                best = MRatio { m, witness: (base + i as i64, k as i64) };
            }
        }
    }
    best
}
