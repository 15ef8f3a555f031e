use thiserror::Error;

/// Errors raised by pencil evaluation, domain queries, algebra extraction and map evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tuple length mismatch: expected {expected}, found {found}")]
    TupleLengthMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("I + Lambda_F(X) is numerically singular (reciprocal condition {rcond:e})")]
    SingularPencil { rcond: f64 },

    #[error("point outside the domain of the map: pencil reciprocal condition {rcond:e}")]
    DomainBreach { rcond: f64 },

    #[error("products leave the span of the tuple (relative residual {residual:e})")]
    SpanViolation { residual: f64 },

    #[error("tuple is linearly dependent")]
    DependentInput,

    #[error("direction is zero")]
    ZeroDirection,

    #[error("empty tuple (g must be at least 1)")]
    EmptyTuple,

    #[error("non-finite entry in matrix {index}")]
    NonFinite { index: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable identifier used in structured JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TupleLengthMismatch { .. } => "TupleLengthMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::SingularPencil { .. } => "SingularPencil",
            Error::DomainBreach { .. } => "DomainBreach",
            Error::SpanViolation { .. } => "SpanViolation",
            Error::DependentInput => "DependentInput",
            Error::ZeroDirection => "ZeroDirection",
            Error::EmptyTuple => "EmptyTuple",
            Error::NonFinite { .. } => "NonFinite",
            Error::Invalid(_) => "Invalid",
        }
    }

    /// True for errors that describe the numerics of valid input (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularPencil { .. }
                | Error::DomainBreach { .. }
                | Error::SpanViolation { .. }
                | Error::DependentInput
                | Error::NotHermitian { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
