use thiserror::Error;

/// Errors shared across the whole library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,

    #[error("algebra mismatch: modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("unsupported over this field: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
