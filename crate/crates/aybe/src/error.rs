//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by constructions, evaluators and verifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the documented domain of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The evaluation point is a pole (or a zero of a denominator).
    #[error("pole encountered: {0}")]
    Pole(String),
    /// A linear system is singular or too badly conditioned to trust.
    #[error("ill-conditioned system (condition number {cond:.3e}): {context}")]
    IllConditioned { cond: f64, context: String },
    /// Integers that must be coprime are not.
    #[error("({0}, {1}) are not coprime")]
    NotCoprime(usize, usize),
    /// A leg tag other than 12, 13 or 23.
    #[error("invalid leg tag {0}; expected one of 12, 13, 23")]
    InvalidLeg(u8),
    /// Unknown solution name in the catalog.
    #[error("unknown solution `{0}`")]
    UnknownSolution(String),
    /// The requested solution has no classical partner.
    #[error("`{0}` has no classical limit")]
    NoClassicalLimit(String),
    /// A limit extraction detected divergence.
    #[error("divergence detected: {0}")]
    Divergence(String),
    /// Malformed serialized data.
    #[error("format error: {0}")]
    Format(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
