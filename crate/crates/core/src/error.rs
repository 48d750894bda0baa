use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A failed cell of a piecewise construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    /// Cell position: `(j, 0)` in 1D, `(j_x, j_y)` in 2D.
    pub cell: (usize, usize),
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite sample {value} at x = {x}{}", y.map(|y| format!(", y = {y}")).unwrap_or_default())]
    Sampling { x: f64, y: Option<f64>, value: f64 },

    #[error("point {point:?} lies outside the domain {domain}")]
    OutOfDomain { point: Vec<f64>, domain: String },

    #[error("matrix has full column rank, no kernel vector available")]
    NoKernel,

    #[error("{} of {total} cells failed to build (first: cell {:?}: {})", failures.len(), failures[0].cell, failures[0].error)]
    CellFailures {
        total: usize,
        failures: Vec<CellFailure>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
