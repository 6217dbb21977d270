use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported Coxeter label {0} (supported: 2, 3, 4, 5, 6, infinity)")]
    UnsupportedLabel(String),

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("braid letter {index} out of range for a tuple of length {len}")]
    BraidIndexOutOfRange { index: usize, len: usize },

    #[error("element is not a reflection")]
    NotAReflection,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown group type {0:?}")]
    UnknownType(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("search cap of {cap} exceeded ({what})")]
    CapExceeded { cap: usize, what: String },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
