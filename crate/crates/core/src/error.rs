//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameter outside its documented domain.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A requested exhaustive operation exceeds its enumeration cap.
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    /// A rejection-sampling loop exhausted its retry budget.
    #[error("sampling retries exhausted: {0}")]
    RetriesExhausted(String),

    /// A construction failed a verified invariant (details carried along).
    #[error("construction error: {0}")]
    Construction(String),

    /// Feasibility failure (e.g. no balanced set exists for the requested b).
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
