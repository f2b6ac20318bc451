use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Finitely represented bijection `n ↦ aₙ` of ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum IntBijection {
    /// `aₙ = values[n − lo]` on `[lo, hi]`, `aₙ = n` elsewhere.
    IdentityTail { lo: i64, hi: i64, values: Vec<i64> },
    /// `aₙ = n + disp[n mod period]`.
    Periodic { period: i64, disp: Vec<i64> },
    /// `aₙ = −bₙ` where `b` is the inner sequence.
    Negated { inner: Box<IntBijection> },
}

/// Direction in which a bijection sends the ends of ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LimitClass {
    /// `aₙ → ±∞` as `n → ±∞`.
    SameDirection,
    /// `aₙ → ∓∞` as `n → ±∞`.
    Mirrored,
}

impl IntBijection {
    pub fn identity() -> Self {
        IntBijection::IdentityTail { lo: 0, hi: -1, values: Vec::new() }
    }

    /// Identity-tail bijection with window starting at `lo`.
    pub fn identity_tail(lo: i64, values: Vec<i64>) -> Result<Self> {
        let hi = lo + values.len() as i64 - 1;
        let s = IntBijection::IdentityTail { lo, hi, values };
        if s.is_bijective() {
            Ok(s)
        } else {
            Err(Error::NotBijective)
        }
    }

    pub fn periodic(disp: Vec<i64>) -> Result<Self> {
        let s = IntBijection::Periodic { period: disp.len() as i64, disp };
        if s.is_bijective() {
            Ok(s)
        } else {
            Err(Error::NotBijective)
        }
    }

    /// The transposition of `m` and `n`.
    pub fn swap(m: i64, n: i64) -> Self {
        let (lo, hi) = (m.min(n), m.max(n));
        let mut values: Vec<i64> = (lo..=hi).collect();
        values[0] = hi;
        *values.last_mut().unwrap() = lo;
        IntBijection::IdentityTail { lo, hi, values }
    }

    pub fn negated(self) -> Self {
        match self {
            IntBijection::Negated { inner } => *inner,
            s => IntBijection::Negated { inner: Box::new(s) },
        }
    }

    /// Structural checks: window length, positive period, finite nesting.
    pub fn well_formed(&self) -> Result<()> {
        match self {
            IntBijection::IdentityTail { lo, hi, values } => {
                if hi - lo + 1 != values.len() as i64 {
                    return Err(Error::Malformed(format!(
                        "window [{lo}, {hi}] holds {} values",
                        values.len()
                    )));
                }
                Ok(())
            }
            IntBijection::Periodic { period, disp } => {
                if *period < 1 || *period != disp.len() as i64 {
                    return Err(Error::Malformed(format!(
                        "period {period} with {} displacements",
                        disp.len()
                    )));
                }
                Ok(())
            }
            IntBijection::Negated { inner } => inner.well_formed(),
        }
    }

    /// True iff the representation describes a bijection of ℤ.
    pub fn is_bijective(&self) -> bool {
        if self.well_formed().is_err() {
            return false;
        }
        match self {
            IntBijection::IdentityTail { lo, values, .. } => {
                let mut seen = vec![false; values.len()];
                values.iter().all(|&v| {
                    let i = v - lo;
                    if i < 0 || i >= seen.len() as i64 || seen[i as usize] {
                        return false;
                    }
                    seen[i as usize] = true;
                    true
                })
            }
            IntBijection::Periodic { period, disp } => {
                let mut seen = vec![false; *period as usize];
                disp.iter().enumerate().all(|(j, &d)| {
                    let r = (j as i64 + d).rem_euclid(*period) as usize;
                    !core::mem::replace(&mut seen[r], true)
                })
            }
            IntBijection::Negated { inner } => inner.is_bijective(),
        }
    }

    /// `aₙ`. The representation must be well formed.
    pub fn value(&self, n: i64) -> i64 {
        match self {
            IntBijection::IdentityTail { lo, hi, values } => {
                if n < *lo || n > *hi {
                    n
                } else {
                    values[(n - lo) as usize]
                }
            }
            IntBijection::Periodic { period, disp } => n + disp[n.rem_euclid(*period) as usize],
            IntBijection::Negated { inner } => -inner.value(n),
        }
    }

    /// `sup |aₙ − n|`, or `None` for mirrored sequences where it is infinite.
    pub fn max_displacement(&self) -> Option<i64> {
        match self {
            IntBijection::IdentityTail { lo, values, .. } => Some(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v - (lo + i as i64)).abs())
                    .max()
                    .unwrap_or(0),
            ),
            IntBijection::Periodic { disp, .. } => {
                Some(disp.iter().map(|d| d.abs()).max().unwrap_or(0))
            }
            IntBijection::Negated { .. } => None,
        }
    }

    /// Removes nested negations: returns whether the sequence is mirrored and
    /// the same-direction base it mirrors.
    pub fn base(&self) -> (bool, &IntBijection) {
        match self {
            IntBijection::Negated { inner } => {
                let (m, b) = inner.base();
                (!m, b)
            }
            s => (false, s),
        }
    }

    pub fn limit_classification(&self) -> LimitClass {
        // identity tails and periodic displacements both have bounded
        // displacement, so they keep the direction of n
        if self.base().0 {
            LimitClass::Mirrored
        } else {
            LimitClass::SameDirection
        }
    }

    /// Index range outside of which the representation is trivial:
    /// the window of an identity tail, one period otherwise.
    pub fn window(&self) -> (i64, i64) {
        match self {
            IntBijection::IdentityTail { lo, hi, .. } => (*lo, *hi),
            IntBijection::Periodic { period, .. } => (0, period - 1),
            IntBijection::Negated { inner } => inner.window(),
        }
    }

    /// `n ↦ −a₋ₙ`, the conjugate by negation. Preserves the direction class.
    pub fn reflect(&self) -> Self {
        match self {
            IntBijection::IdentityTail { lo, hi, values } => IntBijection::IdentityTail {
                lo: -hi,
                hi: -lo,
                values: values.iter().rev().map(|v| -v).collect(),
            },
            IntBijection::Periodic { period, disp } => {
                // -a(-n) = n - disp[(-n) mod P]
                let d = (0..*period).map(|j| -disp[(-j).rem_euclid(*period) as usize]).collect();
                IntBijection::Periodic { period: *period, disp: d }
            }
            IntBijection::Negated { inner } => {
                IntBijection::Negated { inner: Box::new(inner.reflect()) }
            }
        }
    }

    /// Inverse bijection.
    pub fn inverse(&self) -> Self {
        match self {
            IntBijection::IdentityTail { lo, hi, values } => {
                let mut inv = vec![0; values.len()];
                for (i, &v) in values.iter().enumerate() {
                    inv[(v - lo) as usize] = lo + i as i64;
                }
                IntBijection::IdentityTail { lo: *lo, hi: *hi, values: inv }
            }
            IntBijection::Periodic { period, disp } => {
                let mut inv = vec![0; disp.len()];
                for (j, &d) in disp.iter().enumerate() {
                    inv[(j as i64 + d).rem_euclid(*period) as usize] = -d;
                }
                IntBijection::Periodic { period: *period, disp: inv }
            }
            // n = -b(m)  =>  m = b⁻¹(-n) = -(reflected b⁻¹)(n)
            IntBijection::Negated { inner } => {
                IntBijection::Negated { inner: Box::new(inner.inverse().reflect()) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn six_periodic() -> IntBijection {
        IntBijection::periodic(vec![0, 1, -4, 0, 1, -4]).unwrap()
    }

    #[test]
    fn bijectivity() {
        assert!(IntBijection::IdentityTail { lo: 0, hi: 1, values: vec![1, 0] }.is_bijective());
        assert!(!IntBijection::IdentityTail { lo: 0, hi: 1, values: vec![0, 0] }.is_bijective());
        assert!(!IntBijection::IdentityTail { lo: 0, hi: 2, values: vec![0, 1] }.is_bijective());
        assert!(six_periodic().is_bijective());
        assert!(!IntBijection::Periodic { period: 2, disp: vec![1, 0] }.is_bijective());
    }

    #[test]
    fn periodic_example_values() {
        let a = six_periodic();
        for n in -3..3 {
            assert_eq!(a.value(6 * n), 6 * n);
            assert_eq!(a.value(6 * n + 1), 6 * n + 2);
            assert_eq!(a.value(6 * n + 2), 6 * n - 2);
            assert_eq!(a.value(6 * n + 3), 6 * n + 3);
            assert_eq!(a.value(6 * n + 4), 6 * n + 5);
            assert_eq!(a.value(6 * n + 5), 6 * n + 1);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(IntBijection::identity().limit_classification(), LimitClass::SameDirection);
        assert_eq!(six_periodic().limit_classification(), LimitClass::SameDirection);
        let neg = IntBijection::identity().negated();
        assert_eq!(neg.limit_classification(), LimitClass::Mirrored);
        assert_eq!(neg.value(3), -3);
        assert_eq!(neg.negated(), IntBijection::identity());
    }

    #[test]
    fn inverse_and_reflect() {
        let seqs = [
            IntBijection::identity_tail(-2, vec![0, -2, 1, -1]).unwrap(),
            six_periodic(),
            IntBijection::swap(0, 3).negated(),
        ];
        for s in &seqs {
            let inv = s.inverse();
            let r = s.reflect();
            for n in -20..20 {
                assert_eq!(inv.value(s.value(n)), n);
                assert_eq!(r.value(n), -s.value(-n));
            }
        }
    }
}
