//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Elements or operators from different algebras were combined.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An eigenvalue required to be nonzero vanished.
    #[error("singular element: {0}")]
    SingularElement(String),

    /// The element is not in the open symmetric cone.
    #[error("element not in the cone: {0}")]
    NotInCone(String),

    /// The iterative eigensolver failed to reach its threshold.
    #[error("eigensolver did not converge: off-diagonal norm {off:.3e} after {sweeps} sweeps")]
    NoConvergence { off: f64, sweeps: usize },

    /// A set of idempotents does not form a complete Jordan frame.
    #[error("incomplete Jordan frame: {0}")]
    FrameIncomplete(String),

    /// An element expected to be idempotent is not.
    #[error("element is not idempotent (residual {0:.3e})")]
    NotIdempotent(f64),

    /// A precondition on the inputs failed.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Principal-minor order outside `1..=rank`.
    #[error("minor order {k} out of range 1..={rank}")]
    IndexOutOfRange { k: usize, rank: usize },

    /// A verification residual exceeded the configured tolerance.
    #[error("tolerance exceeded in {what}: residual {residual:.3e}")]
    ToleranceExceeded { what: String, residual: f64 },

    /// Malformed JSON input.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
