use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("invalid field spec: {0}")]
    BadField(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension {0} outside supported range 1..=6")]
    BadDimension(usize),
    #[error("required precision {needed} exceeds ceiling {ceiling}")]
    PrecisionExceeded { needed: i64, ceiling: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
}
