use thiserror::Error;

/// Errors raised by the algebra kernel and the CLI layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring descriptor mismatch: {0}")]
    DescriptorMismatch(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("grading error: {0}")]
    Grading(String),

    #[error("degenerate ring: the ideal contains a unit")]
    DegenerateRing,

    #[error("undefined degree: the zero polynomial has no weighted degree")]
    UndefinedDegree,

    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resolution rank guard exceeded: {0}")]
    RankGuard(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("input error: {0}")]
    Input(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
