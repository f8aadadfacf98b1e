use thiserror::Error;

/// Errors produced by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Gram matrix is numerically singular: Cholesky pivot {index} is {pivot:e}")]
    Conditioning { index: usize, pivot: f64 },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error(
        "Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off:e})"
    )]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("matrix expected to be positive semidefinite has eigenvalue {value:e}")]
    NegativeEigenvalue { value: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
