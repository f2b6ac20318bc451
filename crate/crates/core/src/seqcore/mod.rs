//! Finite representations of integer sequences and the checkable conditions
//! on them: three-point constants, splitting intervals, the M-ratio of
//! monotone sequences, and empirical quasisymmetry profiles.

mod bijection;
mod monotone;
mod qs;
mod split;
mod three_point;

pub use bijection::{IntBijection, LimitClass};
pub use monotone::{m_ratio, MRatio, MonotoneSeq};
pub use qs::{qs_profile, QsProfile};
pub use split::{
    block_image, find_split_decomposition, is_cut, split_decomposition, splits_interval,
    SplitDecomposition, SplitFailure,
};
pub use three_point::{three_point_lambda, ThreePointReport};
