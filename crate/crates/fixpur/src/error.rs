//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A dimension argument is outside its legal range.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// A numeric argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coordinate is undefined at this point (e.g. a vanishing denominator).
    #[error("degenerate coordinate: {0}")]
    Degenerate(String),

    /// Polar coordinates violate the chamber bounds.
    #[error("point outside the Weyl chamber: {0}")]
    OutOfChamber(String),

    /// A bound interval is empty for a context that should be legal.
    #[error("infeasible context: {0}")]
    Infeasible(String),

    /// A matrix fails a structural requirement (Hermiticity, trace, PSD).
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// A numerical routine failed to converge or to meet its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The requested combination of arguments is not implemented.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Serialisation or parsing of a persisted artefact failed.
    #[error("format error: {0}")]
    Format(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;
