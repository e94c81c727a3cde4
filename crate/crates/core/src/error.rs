use thiserror::Error;

use crate::scalar::ScalarDomain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(ScalarDomain, ScalarDomain),
    #[error("matrix is singular")]
    Singular,
    #[error("no Moore-Penrose inverse exists")]
    NoMpInverse,
    #[error("matrix is not group invertible")]
    NotGroupInvertible,
    #[error("{0} is not idempotent")]
    NotIdempotent(&'static str),
    #[error("the index set K must not be empty")]
    EmptyK,
    #[error("Peirce blocks were taken against the wrong idempotents")]
    BlockMismatch,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("law context invariant violated: {0}")]
    ContextInvariant(&'static str),
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
