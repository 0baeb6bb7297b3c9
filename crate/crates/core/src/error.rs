use thiserror::Error;

/// Errors for algebra construction, spectral computations and measure
/// operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("block shapes do not match the algebra: {0}")]
    ShapeMismatch(String),

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("operator is not Hermitian: defect {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("eigensolver residual {residual:e} exceeds {tolerance:e}")]
    EigensolverResidual { residual: f64, tolerance: f64 },

    #[error("operator is not positive semidefinite: eigenvalue {eigenvalue:e} below -{tolerance:e}")]
    NotPositive { eigenvalue: f64, tolerance: f64 },

    #[error("trace {trace} is not 1 within {tolerance:e}")]
    NotNormalized { trace: f64, tolerance: f64 },

    #[error("beta must lie in open interval (0,1)")]
    BetaOutOfRange(f64),

    #[error("function value is not finite at spectral point {0}")]
    NonFiniteFunctionValue(f64),

    #[error("lambda must be nonnegative, got {0}")]
    NegativeLambda(f64),

    #[error("invalid interval [{lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("measure context mismatch: {0}")]
    ContextMismatch(String),

    #[error("internal consistency failure in {what}: {left} vs {right} differ beyond {tolerance:e}")]
    InternalConsistency {
        what: &'static str,
        left: f64,
        right: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
