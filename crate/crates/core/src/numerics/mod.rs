//! Scalar substrates: exact rationals, binary big floats, sampling.

mod context;
mod degree;
mod rational;
mod real;
mod sampler;
mod scalar;

pub use context::PrecisionContext;
pub use degree::DegreeTracker;
pub use rational::{rat, ExactRational};
pub use real::BigReal;
pub use sampler::{sample_rationals, Exclusion, RationalSampler};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("sample space exhausted")]
    SampleSpaceExhausted,
    #[error("{0}")]
    Parse(String),
    #[error("invalid precision context: {0}")]
    InvalidContext(String),
    #[error("negative square root")]
    NegativeSqrt,
}

/// Exact conversion to the working precision of `ctx`.
pub fn to_real(r: &ExactRational, ctx: &PrecisionContext) -> BigReal {
    BigReal::from_rational(r, ctx.precision_bits())
}
