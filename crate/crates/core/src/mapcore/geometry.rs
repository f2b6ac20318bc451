use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point `re + i·im` of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl Point {
    pub const ZERO: Point = Point { re: 0.0, im: 0.0 };

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Point { re, im }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        Point { re, im: 0.0 }
    }

    #[inline]
    pub fn norm(self) -> f64 {
        crate::math::hypot(self.re, self.im)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn conj(self) -> Self {
        Point::new(self.re, -self.im)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.re, -self.im)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.re * rhs, self.im * rhs)
    }
}

impl From<Complex64> for Point {
    fn from(c: Complex64) -> Self {
        Point::new(c.re, c.im)
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        Complex64::new(p.re, p.im)
    }
}

/// Axis-aligned rectangle `|x − cx| < hw, |y − cy| < hh`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rect {
    pub cx: f64,
    pub cy: f64,
    pub hw: f64,
    pub hh: f64,
}

impl Rect {
    pub fn new(cx: f64, cy: f64, hw: f64, hh: f64) -> Result<Self> {
        let r = Rect { cx, cy, hw, hh };
        r.validate()?;
        Ok(r)
    }

    /// Rectangle spanning `[x0, x1] × [y0, y1]`.
    pub fn from_bounds(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        Rect::new((x0 + x1) / 2.0, (y0 + y1) / 2.0, (x1 - x0) / 2.0, (y1 - y0) / 2.0)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.cx.is_finite()
            && self.cy.is_finite()
            && self.hw.is_finite()
            && self.hh.is_finite()
            && self.hw > 0.0
            && self.hh > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRect { hw: self.hw, hh: self.hh })
        }
    }

    #[inline]
    pub fn x0(&self) -> f64 {
        self.cx - self.hw
    }
    #[inline]
    pub fn x1(&self) -> f64 {
        self.cx + self.hw
    }
    #[inline]
    pub fn y0(&self) -> f64 {
        self.cy - self.hh
    }
    #[inline]
    pub fn y1(&self) -> f64 {
        self.cy + self.hh
    }

    /// Membership in the open rectangle.
    #[inline]
    pub fn contains(&self, z: Point) -> bool {
        (z.re - self.cx).abs() < self.hw && (z.im - self.cy).abs() < self.hh
    }

    /// True when the open rectangles share a set of positive area. Rectangles
    /// that only share an edge do not overlap.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x0() < other.x1()
            && other.x0() < self.x1()
            && self.y0() < other.y1()
            && other.y0() < self.y1()
    }

    /// Smallest rectangle containing both.
    pub fn union(&self, other: &Rect) -> Rect {
        let x0 = self.x0().min(other.x0());
        let x1 = self.x1().max(other.x1());
        let y0 = self.y0().min(other.y0());
        let y1 = self.y1().max(other.y1());
        Rect { cx: (x0 + x1) / 2.0, cy: (y0 + y1) / 2.0, hw: (x1 - x0) / 2.0, hh: (y1 - y0) / 2.0 }
    }
}
