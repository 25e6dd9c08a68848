use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: P^{left} vs P^{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("leading coefficient {0} is not a unit in Z")]
    NonUnitLeading(BigInt),

    #[error("invalid hypersurface model: {0}")]
    InvalidModel(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
