use thiserror::Error;

/// Errors raised by the analysis routines.
///
/// Negative verdicts (a system that is not lossless, a certificate that does
/// not exist) are reported through the returned reports, never through this
/// type. These variants cover malformed input and violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("the zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("evaluation at a pole: {0}")]
    EvaluationAtPole(String),

    #[error("violates double-pole bound: {0}")]
    DoublePoleBound(String),

    #[error("higher-order finite imaginary pole at omega^2 = {0}")]
    HigherOrderImaginaryPole(String),

    #[error("omega^2 = {0} is not a pole of the system")]
    NotAPole(String),

    #[error("pole off the imaginary axis: {0}")]
    NonImaginaryPole(String),

    #[error("unsupported pole structure: {0}")]
    Unsupported(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("pair (A, B) is not controllable (rank {rank} < {n})")]
    Uncontrollable { rank: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
