use thiserror::Error;

/// Failure modes shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QwError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The lattice window would grow past its configured bound.
    #[error("lattice window of {requested} sites exceeds the maximum of {max}")]
    Capacity { requested: usize, max: usize },

    /// A numerical self-check failed (eigen-residual, unitarity, ...).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Node doubling hit `max_points` before meeting the tolerance.
    #[error("quadrature did not converge with {points} nodes (last change {change:.3e}, magnitude {magnitude:.3e})")]
    Convergence {
        points: usize,
        change: f64,
        magnitude: f64,
    },

    #[error("fit error: {0}")]
    Fit(String),
}

impl QwError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QwError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, QwError>;
