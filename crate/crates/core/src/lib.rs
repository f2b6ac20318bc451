//! Constructive quasiconformal extensions for bijections of the integers.
//!
//! The crate builds explicit, pointwise-evaluable homeomorphisms of the plane
//! out of rectangle-supported tent slides and similarities, and uses them to
//! extend
//!
//! * bijections `n ↦ aₙ` of ℤ that satisfy a three-point condition
//!   ([`splitflow::extend_automorphism`]),
//! * bijections of the exponential lattice `{eⁿ}` ([`explattice`]),
//! * quasisymmetric embeddings ℤ → ℝ ([`embed::extend_embedding`]).
//!
//! Every map carries a dilatation bound ([`mapcore::MapExpr::dilatation_bound`])
//! and the sequence conditions that make the constructions work are checkable
//! in [`seqcore`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod embed;
pub mod error;
pub mod explattice;
pub mod mapcore;
pub mod permbuild;
pub mod seqcore;
pub mod splitflow;

mod math;

pub use error::{Error, Result};
pub use mapcore::{
    Axis, BeltramiSample, MapExpr, Point, Rect, Similarity, Support, TentSlide,
};
pub use seqcore::{IntBijection, MonotoneSeq};
