//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by constant evaluation, norm computation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result (or an argument) exceeds what double precision can hold.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A root-finding bracket does not enclose a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {flo:e}, f(hi) = {fhi:e}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },

    /// Iterative refinement hit its iteration cap before converging.
    #[error("no convergence within {0} iterations")]
    NoConvergence(usize),

    /// Tensor/argument shapes are inconsistent.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The requested computation exceeds the configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A form file (or other textual input) is malformed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
