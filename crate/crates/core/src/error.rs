use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid basis indices: {0}")]
    InvalidIndices(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// A named semantic rule rejected the input (`wu_parity`, `chamber_required`, ...).
    #[error("{rule}: {message}")]
    Validation { rule: &'static str, message: String },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("operation forbidden: {0}")]
    Forbidden(String),

    #[error("corrupt trace: {0}")]
    CorruptTrace(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
