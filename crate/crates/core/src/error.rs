//! Error type shared by every module.

/// Everything that can go wrong outside of programming errors.
///
/// Programming errors (violated internal invariants, e.g. a DFT table with a
/// non-negligible imaginary part) panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Request exceeds a hard resource cap (order, window or FFT size).
    #[error("resource limit: {0}")]
    Resource(String),

    /// Structurally degenerate input (e.g. zero drive where a drive is required).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A truncated series failed to settle within its cap.  Carries the last
    /// two partial sums.
    #[error("series did not converge: {context} (last partials {previous}, {last})")]
    Truncation {
        context: String,
        previous: f64,
        last: f64,
    },

    /// Time integration lost unitarity beyond the acceptance threshold.
    #[error("integration failure: {0}")]
    Integration(String),

    /// Two inputs that must agree do not.
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
