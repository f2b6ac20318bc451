use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid rectangle: half-width {hw} and half-height {hh} must be positive and finite")]
    InvalidRect { hw: f64, hh: f64 },
    #[error("invalid tent slide: offsets p={p}, q={q} must lie strictly inside half-extent {extent}")]
    InvalidSlide { p: f64, q: f64, extent: f64 },
    #[error("disjoint node children {first} and {second} have overlapping supports")]
    OverlappingSupports { first: usize, second: usize },
    #[error("disjoint node child {index} has unbounded support")]
    UnboundedSupport { index: usize },
    #[error("degenerate point ({re}, {im}): |f_z| does not exceed |f_zbar|")]
    Degenerate { re: f64, im: f64 },
    #[error("sequence is not a bijection of the integers")]
    NotBijective,
    #[error("malformed sequence: {0}")]
    Malformed(String),
    #[error("horizon {horizon} too small: need at least {needed}")]
    HorizonTooSmall { horizon: i64, needed: i64 },
    #[error("three-point constant {certified} exceeds the supplied lambda {lambda}")]
    LambdaTooSmall { certified: f64, lambda: f64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("decomposition mismatch on block [{lo}, {hi}]")]
    DecompositionMismatch { lo: i64, hi: i64 },
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("invalid transposition ({m}, {n}) for block [{lo}, {hi}]")]
    InvalidTransposition { m: i64, n: i64, lo: i64, hi: i64 },
    #[error("sample size mismatch: {0}")]
    SizeMismatch(String),
    #[error("sequence does not tend to 0 on the exponential side (aₙ does not tend to -inf as n -> -inf)")]
    NotTendingToZero,
    #[error("evaluation at the puncture w = 0")]
    Puncture,
}
