use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: Q(sqrt {left}) vs Q(sqrt {right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("singular matrix")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("Leibniz identity fails at (e{i}, e{j}, e{k})")]
    LeibnizViolation { i: usize, j: usize, k: usize },

    #[error("pole: {0}")]
    Pole(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
