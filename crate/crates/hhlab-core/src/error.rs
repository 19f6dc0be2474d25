//! Crate-wide error taxonomy. Variants map onto the CLI exit classes:
//! hypothesis violations (1), invalid inputs (2), numerical failures (3).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported variant: {0}")]
    Unsupported(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("ill-posed ratio: {0}")]
    IllPosedRatio(String),
    #[error("grid too coarse: {0}")]
    Resolution(String),
    #[error("unstable parameters: {0}")]
    Stability(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
