use crate::error::{Error, Result};

use super::bijection::IntBijection;

/// Three-point constant of a bijection: the supremum of
/// `|aₙ − aₘ| / |aₙ − aₖ|` over `n ≤ m < k`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThreePointReport {
    /// Maximum over the enumerated triples.
    pub lambda_empirical: f64,
    /// Global upper bound: the empirical value, the analytic bound for spans
    /// beyond the horizon, and 1, whichever is largest.
    pub lambda_certified: f64,
    pub horizon: i64,
    pub witness: (i64, i64, i64),
}

/// Index range enumerated by [`three_point_lambda`]. For identity tails every
/// triple of span at most `horizon` that touches the window lies inside it;
/// for periodic sequences every such triple has a translate by a multiple of
/// the period inside it.
pub(crate) fn scan_range(seq: &IntBijection, horizon: i64) -> (i64, i64) {
    match seq {
        IntBijection::IdentityTail { lo, hi, .. } if hi >= lo => (lo - horizon, hi + horizon),
        IntBijection::Negated { inner } => scan_range(inner, horizon),
        _ => (-horizon, horizon),
    }
}

/// Measures the three-point constant over all triples `n ≤ m < k` in the scan
/// range and certifies it globally.
///
/// Triples of span `s = k − n` satisfy
/// `|aₙ − aₘ| / |aₙ − aₖ| ≤ (s − 1 + 2D) / (s − 2D)` with `D = sup |aₙ − n|`,
/// a bound that decreases in `s`, so spans beyond the horizon are covered by
/// its value at `s = horizon + 1`. Negation leaves all ratios unchanged.
pub fn three_point_lambda(seq: &IntBijection, horizon: i64) -> Result<ThreePointReport> {
    seq.well_formed()?;
    if !seq.is_bijective() {
        return Err(Error::NotBijective);
    }
    let (_, base) = seq.base();
    let d = base.max_displacement().unwrap_or(0);
    if horizon <= 2 * d {
        return Err(Error::HorizonTooSmall { horizon, needed: 2 * d + 1 });
    }
    if let IntBijection::Periodic { period, .. } = base {
        if horizon < *period {
            return Err(Error::HorizonTooSmall { horizon, needed: *period });
        }
    }

    let (lo, hi) = scan_range(base, horizon);
    let vals: alloc::vec::Vec<i64> = (lo..=hi).map(|n| base.value(n)).collect();
    let len = vals.len();
    let mut best = 0.0_f64;
    let mut witness = (lo, lo, lo + 1);
    for i in 0..len {
        let an = vals[i];
        // running max of |aₙ − aₘ| over m in [n, k)
        let mut run = 0_i64;
        let mut arg = i;
        for k in i + 1..len {
            let r = run as f64 / (an - vals[k]).abs() as f64;
            if r > best {
                best = r;
                witness = (lo + i as i64, lo + arg as i64, lo + k as i64);
            }
            let dm = (an - vals[k]).abs();
            if dm > run {
                run = dm;
                arg = k;
            }
        }
    }
    let h = horizon as f64;
    let d = d as f64;
    let tail = (h + 2.0 * d) / (h + 1.0 - 2.0 * d);
    Ok(ThreePointReport {
        lambda_empirical: best,
        lambda_certified: best.max(tail).max(1.0),
        horizon,
        witness,
    })
}
