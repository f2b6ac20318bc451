//! Plane homeomorphisms assembled from rectangle-supported tent slides.
//!
//! A [`TentSlide`] moves one point on the axis of a rectangle to another point
//! on the same axis and tapers linearly to the identity on the rectangle
//! boundary. [`MapExpr`] composes slides and similarities into trees whose
//! evaluation, inversion and dilatation bound are all computed exactly or by
//! closed form.

mod beltrami;
mod expr;
mod geometry;
mod tent;

pub use beltrami::{
    numeric_beltrami, scan_distortion, BeltramiSample, DistortionScan, Jacobian, DEFAULT_FD_STEP,
};
pub use expr::{MapExpr, Similarity, Sign, Support};
pub use geometry::{Point, Rect};
pub use tent::{Axis, TentSlide, DEFAULT_DILATATION_GRID};
