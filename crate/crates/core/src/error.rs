use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("singular parameters")]
    Singular,
    #[error("singular sample")]
    SingularSample,
    #[error("singular q")]
    SingularQ,
    #[error("divergent parameter domain")]
    DivergentDomain,
    #[error("convergence budget exceeded")]
    BudgetExceeded,
    #[error("invalid shape parameters")]
    InvalidShape,
    #[error("unsupported parameter offset")]
    UnsupportedOffset,
    #[error("series did not converge")]
    NotConverged,
    #[error("outside support")]
    OutsideSupport,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type MathResult<T> = Result<T, MathError>;
