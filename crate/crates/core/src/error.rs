use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid input (bad sizes, empty grids, absurd tolerances).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An integer accumulator would wrap.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// An iteration or truncation scheme ran out of budget before reaching
    /// the requested tolerance.
    #[error("failed to converge: {0}")]
    NonConvergence(String),
    /// Two internal evaluation routes that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
