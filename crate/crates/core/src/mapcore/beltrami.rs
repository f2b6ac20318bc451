use num_complex::Complex64;

use crate::error::{Error, Result};

use super::geometry::{Point, Rect};

/// Default finite-difference step for [`numeric_beltrami`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

const DEGENERACY_TOL: f64 = 1e-14;

/// Real Jacobian `[[u_x, u_y], [v_x, v_y]]` of `f = u + iv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian {
    pub ux: f64,
    pub uy: f64,
    pub vx: f64,
    pub vy: f64,
}

impl Jacobian {
    pub const IDENTITY: Jacobian = Jacobian { ux: 1.0, uy: 0.0, vx: 0.0, vy: 1.0 };

    #[inline]
    pub fn det(&self) -> f64 {
        self.ux * self.vy - self.uy * self.vx
    }

    /// `self · rhs`: the Jacobian of `f ∘ g` with `self` taken from `f`.
    pub fn compose(&self, rhs: &Jacobian) -> Jacobian {
        Jacobian {
            ux: self.ux * rhs.ux + self.uy * rhs.vx,
            uy: self.ux * rhs.uy + self.uy * rhs.vy,
            vx: self.vx * rhs.ux + self.vy * rhs.vx,
            vy: self.vx * rhs.uy + self.vy * rhs.vy,
        }
    }

    pub fn inverse(&self) -> Jacobian {
        let d = self.det();
        Jacobian { ux: self.vy / d, uy: -self.uy / d, vx: -self.vx / d, vy: self.ux / d }
    }

    /// Wirtinger derivatives `(f_z, f_z̄)`.
    #[inline]
    pub fn wirtinger(&self) -> (Complex64, Complex64) {
        let fz = Complex64::new(self.ux + self.vy, self.vx - self.uy) * 0.5;
        let fzbar = Complex64::new(self.ux - self.vy, self.vx + self.uy) * 0.5;
        (fz, fzbar)
    }

    pub fn beltrami(&self, at: Point) -> Result<BeltramiSample> {
        let (fz, fzbar) = self.wirtinger();
        BeltramiSample::from_wirtinger(at, fz, fzbar)
    }
}

/// Beltrami coefficient `μ = f_z̄ / f_z` and pointwise distortion at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeltramiSample {
    pub at: Point,
    pub mu: Complex64,
    pub k_local: f64,
}

impl BeltramiSample {
    pub fn from_wirtinger(at: Point, fz: Complex64, fzbar: Complex64) -> Result<Self> {
        let (a, b) = (fz.norm(), fzbar.norm());
        if !(a - b > DEGENERACY_TOL) {
            return Err(Error::Degenerate { re: at.re, im: at.im });
        }
        let mu = fzbar / fz;
        let m = mu.norm();
        Ok(BeltramiSample { at, mu, k_local: (1.0 + m) / (1.0 - m) })
    }
}

/// Central-difference estimate of the Beltrami coefficient of `f` at `z`.
pub fn numeric_beltrami<F>(f: F, z: Point, h: f64) -> Result<BeltramiSample>
where
    F: Fn(Point) -> Point,
{
    let fx = (f(Point::new(z.re + h, z.im)) - f(Point::new(z.re - h, z.im))) * (0.5 / h);
    let fy = (f(Point::new(z.re, z.im + h)) - f(Point::new(z.re, z.im - h))) * (0.5 / h);
    let j = Jacobian { ux: fx.re, uy: fy.re, vx: fx.im, vy: fy.im };
    j.beltrami(z)
}

/// Largest finite-difference distortion over an `n × n` grid of cell centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionScan {
    pub max_k: f64,
    pub at: Point,
    pub samples: usize,
    /// Stencils where the estimate was not orientation preserving.
    pub degenerate: usize,
}

pub fn scan_distortion<F>(f: F, region: Rect, n: usize, h: f64) -> DistortionScan
where
    F: Fn(Point) -> Point,
{
    let mut out = DistortionScan { max_k: 1.0, at: Point::new(region.cx, region.cy), samples: 0, degenerate: 0 };
    let (dx, dy) = (2.0 * region.hw / n as f64, 2.0 * region.hh / n as f64);
    for i in 0..n {
        for j in 0..n {
            let z = Point::new(region.x0() + (i as f64 + 0.5) * dx, region.y0() + (j as f64 + 0.5) * dy);
            out.samples += 1;
            match numeric_beltrami(&f, z, h) {
                Ok(s) if s.k_local > out.max_k => {
                    out.max_k = s.k_local;
                    out.at = z;
                }
                Ok(_) => {}
                Err(_) => out.degenerate += 1,
            }
        }
    }
    out
}

