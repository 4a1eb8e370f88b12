use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interval endpoints are not finite: [{lo}, {hi}]")]
    NonFiniteInterval { lo: f64, hi: f64 },

    #[error("interval lower endpoint {lo} exceeds upper endpoint {hi}")]
    InvertedInterval { lo: f64, hi: f64 },

    #[error("matrix entry is not finite")]
    NonFiniteEntry,

    #[error("matrix order must be at least 1")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("query point is not finite")]
    NonFiniteQuery,

    #[error("eigenvalue index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("probe offset must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("matrix is not in nonnegative normalized form")]
    NotNormalized,

    #[error("off-diagonal entry {index} is not strictly positive")]
    NonPositiveOffDiagonal { index: usize },

    #[error("sign pattern has a zero entry at position {0}")]
    ZeroSign(usize),

    #[error("inverse iteration did not converge after {restarts} restarts")]
    NoConvergence { restarts: usize },

    #[error("vertex enumeration needs 2^{bits} matrices, cap is 2^{cap}")]
    EnumerationCap { bits: usize, cap: usize },

    #[error("grid of {points} points exceeds the sampling budget of {budget}")]
    GridBudget { points: f64, budget: u64 },
}
