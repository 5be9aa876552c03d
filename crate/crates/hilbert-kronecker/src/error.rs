use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported discriminant {0}")]
    UnsupportedDiscriminant(i64),
    #[error("invalid weight {0}: {1}")]
    InvalidWeight(i64, &'static str),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("negative twist exponent")]
    NegativeExponent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
