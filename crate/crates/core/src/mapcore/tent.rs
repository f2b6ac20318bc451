use crate::error::{Error, Result};
use crate::math;

use super::beltrami::{BeltramiSample, Jacobian};
use super::geometry::{Point, Rect};

/// Default resolution of the dilatation grid.
pub const DEFAULT_DILATATION_GRID: usize = 256;

/// Direction along which a [`TentSlide`] displaces points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Rectangle-supported slide moving the axis point at offset `p` (from the
/// center) to offset `q`.
///
/// In local coordinates `t` (along the axis) and `c` (across it) the map is
/// `t ↦ t + s(t)·(1 − |c|/b)` where `s` is the piecewise-linear tent with
/// `s(±a) = 0`, `s(p) = q − p`, `a` the half-extent along the axis and `b`
/// the half-extent across it. Outside the open rectangle it is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TentSlide {
    pub rect: Rect,
    pub axis: Axis,
    pub p: f64,
    pub q: f64,
}

// Local frame: (t, c) = (axis offset, cross offset).
#[derive(Clone, Copy)]
struct Local {
    t: f64,
    c: f64,
}

impl TentSlide {
    pub fn new(rect: Rect, axis: Axis, p: f64, q: f64) -> Result<Self> {
        let s = TentSlide { rect, axis, p, q };
        s.validate()?;
        Ok(s)
    }

    /// Horizontal slide inside `rect` taking `x = rect.cx + p` to `rect.cx + q`.
    pub fn horizontal(rect: Rect, p: f64, q: f64) -> Result<Self> {
        Self::new(rect, Axis::Horizontal, p, q)
    }

    /// Vertical slide inside `rect` taking `y = rect.cy + p` to `rect.cy + q`.
    pub fn vertical(rect: Rect, p: f64, q: f64) -> Result<Self> {
        Self::new(rect, Axis::Vertical, p, q)
    }

    pub fn validate(&self) -> Result<()> {
        self.rect.validate()?;
        let a = self.axis_extent();
        let ok = self.p.is_finite() && self.q.is_finite() && self.p.abs() < a && self.q.abs() < a;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSlide { p: self.p, q: self.q, extent: a })
        }
    }

    /// Half-extent along the sliding axis.
    #[inline]
    pub fn axis_extent(&self) -> f64 {
        match self.axis {
            Axis::Horizontal => self.rect.hw,
            Axis::Vertical => self.rect.hh,
        }
    }

    /// Half-extent across the sliding axis.
    #[inline]
    pub fn cross_extent(&self) -> f64 {
        match self.axis {
            Axis::Horizontal => self.rect.hh,
            Axis::Vertical => self.rect.hw,
        }
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.p == self.q
    }

    #[inline]
    fn to_local(&self, z: Point) -> Local {
        let (dx, dy) = (z.re - self.rect.cx, z.im - self.rect.cy);
        match self.axis {
            Axis::Horizontal => Local { t: dx, c: dy },
            Axis::Vertical => Local { t: dy, c: dx },
        }
    }

    #[inline]
    fn from_local(&self, l: Local) -> Point {
        match self.axis {
            Axis::Horizontal => Point::new(self.rect.cx + l.t, self.rect.cy + l.c),
            Axis::Vertical => Point::new(self.rect.cx + l.c, self.rect.cy + l.t),
        }
    }

    /// Tent displacement `s(t)`.
    #[inline]
    fn displacement(&self, t: f64) -> f64 {
        let a = self.axis_extent();
        let d = self.q - self.p;
        if t <= self.p {
            d * (t + a) / (self.p + a)
        } else {
            d * (a - t) / (a - self.p)
        }
    }

    #[inline]
    fn taper(&self, c: f64) -> f64 {
        1.0 - c.abs() / self.cross_extent()
    }

    /// Image of the kink `t = p` on the line with taper `tau`; exactly `q`
    /// on the axis.
    #[inline]
    fn kink_image(&self, tau: f64) -> f64 {
        self.q * tau + self.p * (1.0 - tau)
    }

    /// Image of `z`.
    pub fn eval(&self, z: Point) -> Point {
        if self.is_identity() || !self.rect.contains(z) {
            return z;
        }
        let l = self.to_local(z);
        let tau = self.taper(l.c);
        let t = if l.t == self.p { self.kink_image(tau) } else { l.t + self.displacement(l.t) * tau };
        self.from_local(Local { t, c: l.c })
    }

    /// Preimage of `w`. Along each line parallel to the axis the map is
    /// piecewise linear with positive slope, so the solve is closed form.
    pub fn inverse(&self, w: Point) -> Point {
        if self.is_identity() || !self.rect.contains(w) {
            return w;
        }
        let a = self.axis_extent();
        let l = self.to_local(w);
        let tau = self.taper(l.c);
        let kink = self.kink_image(tau);
        let t = if l.t == kink {
            self.p
        } else if l.t < kink {
            -a + (l.t + a) * (self.p + a) / (kink + a)
        } else {
            self.p + (l.t - kink) * (a - self.p) / (a - kink)
        };
        self.from_local(Local { t, c: l.c })
    }

    // Local partials (dt'/dt, dt'/dc) on a chosen branch. `right` picks the
    // t > p piece; `cross_sign` is the derivative of |c| (0 on the crease).
    // Coordinates may sit on the closure of the branch.
    fn branch_partials(&self, t: f64, c: f64, right: bool, cross_sign: f64) -> (f64, f64) {
        let a = self.axis_extent();
        let b = self.cross_extent();
        let d = self.q - self.p;
        let (s, ds) = if right {
            (d * (a - t) / (a - self.p), -d / (a - self.p))
        } else {
            (d * (t + a) / (self.p + a), d / (self.p + a))
        };
        let tau = 1.0 - c.abs() / b;
        (1.0 + ds * tau, -s * cross_sign / b)
    }

    fn branch_jacobian(&self, t: f64, c: f64, right: bool, cross_sign: f64) -> Jacobian {
        let (tt, tc) = self.branch_partials(t, c, right, cross_sign);
        match self.axis {
            Axis::Horizontal => Jacobian { ux: tt, uy: tc, vx: 0.0, vy: 1.0 },
            Axis::Vertical => Jacobian { ux: 1.0, uy: 0.0, vx: tc, vy: tt },
        }
    }

    /// Analytic Jacobian at `z`. On the line `t = p` the limit from the
    /// larger axis coordinate is used; on the crease `c = 0` the cross
    /// derivative of the taper is taken as 0, the mean of its one-sided values.
    pub fn jacobian(&self, z: Point) -> Jacobian {
        if self.is_identity() || !self.rect.contains(z) {
            return Jacobian::IDENTITY;
        }
        let l = self.to_local(z);
        self.branch_jacobian(l.t, l.c, l.t >= self.p, signum(l.c))
    }

    /// Analytic Beltrami coefficient at `z`.
    pub fn beltrami(&self, z: Point) -> Result<BeltramiSample> {
        self.jacobian(z).beltrami(z)
    }

    /// Supremum of the pointwise distortion over the rectangle using the
    /// default grid.
    pub fn dilatation(&self) -> f64 {
        self.dilatation_with_grid(DEFAULT_DILATATION_GRID)
    }

    /// Supremum of the pointwise distortion: closed form evaluated on the
    /// candidate extremal set of every branch, then refined over an
    /// `n × n` grid of cell centers.
    pub fn dilatation_with_grid(&self, n: usize) -> f64 {
        if self.is_identity() {
            return 1.0;
        }
        let a = self.axis_extent();
        let b = self.cross_extent();
        // the Jacobian is a shear with determinant u_t, so K + 1/K equals
        // (u_t² + u_c² + 1) / u_t and it suffices to maximize that
        let mut g_max = 2.0_f64;
        let mut consider = |(ut, uc): (f64, f64)| {
            if ut > 0.0 {
                g_max = g_max.max((ut * ut + uc * uc + 1.0) / ut);
            }
        };
        for &right in &[false, true] {
            let ts: [f64; 2] = if right { [self.p, a] } else { [-a, self.p] };
            for &t in &ts {
                for &c in &[-b, 0.0, b] {
                    consider(self.branch_partials(t, c, right, 1.0));
                }
            }
        }
        let n = n.max(1);
        let d = self.q - self.p;
        for i in 0..n {
            let t = -a + (2.0 * i as f64 + 1.0) * a / n as f64;
            let (s, ds) = if t >= self.p {
                (d * (a - t) / (a - self.p), -d / (a - self.p))
            } else {
                (d * (t + a) / (self.p + a), d / (self.p + a))
            };
            let uc2 = (s / b) * (s / b);
            for j in 0..n {
                let c = -b + (2.0 * j as f64 + 1.0) * b / n as f64;
                let ut = 1.0 + ds * (1.0 - c.abs() / b);
                if ut > 0.0 {
                    g_max = g_max.max((ut * ut + uc2 + 1.0) / ut);
                }
            }
        }
        0.5 * (g_max + math::sqrt((g_max * g_max - 4.0).max(0.0)))
    }
}

#[inline]
fn signum(c: f64) -> f64 {
    if c > 0.0 {
        1.0
    } else if c < 0.0 {
        -1.0
    } else {
        0.0
    }
}
