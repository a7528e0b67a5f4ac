use std::time::Duration;

use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("argument {value} outside the domain of {function}: {reason}")]
    Domain {
        function: &'static str,
        value: f64,
        reason: String,
    },

    #[error("{what} has {size} elements, above the configured cap of {cap}")]
    ResourceCap { what: String, size: String, cap: u64 },

    /// The clique search ran out of time or nodes. `best_found` is the size
    /// of the largest valid code seen so far, which is still a lower bound.
    #[error("search budget exceeded after {elapsed:?} ({nodes} nodes); best code found has {best_found} words")]
    BudgetExceeded {
        elapsed: Duration,
        nodes: u64,
        best_found: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bracket failure in {0}: no sign change found")]
    BracketFailure(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
