use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `ResourceLimit` is kept separate from "nothing found" results so callers
/// can tell an exhausted search from an empty one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} lies outside the domain [{lo}, {hi}]")]
    OutsideDomain { point: String, lo: String, hi: String },

    #[error("range [{range_lo}, {range_hi}] of the inner map is not contained in the outer domain [{lo}, {hi}]")]
    RangeMismatch {
        range_lo: String,
        range_hi: String,
        lo: String,
        hi: String,
    },

    #[error("piece count {required} exceeds the breakpoint cap {cap}")]
    ResourceLimit { required: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed piecewise-linear data: {0}")]
    Malformed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no covering chain found: {0}")]
    NoChain(String),

    #[error("insufficient crossings: need {needed}, found {found}")]
    InsufficientCrossings { needed: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
