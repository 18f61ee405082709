use thiserror::Error;

use crate::ncalg::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("rewrite iteration cap of {cap} reductions exceeded")]
    IterationCap { cap: usize },
    #[error("generator {0} has no image in this representation")]
    MissingGenerator(String),
    #[error("generator {0} is not part of the presentation")]
    ForeignGenerator(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative radicand {value} in coefficient {context}")]
    NegativeRadicand { value: f64, context: String },
    #[error("monomial images are linearly dependent (smallest singular value {0:e}); lower D")]
    DependentMonomials(f64),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
