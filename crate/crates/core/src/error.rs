use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is singular (zero pivot at elimination step {step})")]
    Singular { step: usize },

    #[error("Bessel function of the second kind is singular at z = 0")]
    SingularArgument,

    #[error("dense eigenvalue routine failed to converge")]
    NoConvergence,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("refinement failed: {0}")]
    Refinement(String),

    #[error("insufficient probe count: {0}")]
    RankTest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
