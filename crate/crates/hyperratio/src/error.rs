//! Error type shared by all evaluation and certification routines.

use thiserror::Error;

/// Errors raised by evaluation, certification, and parsing routines.
///
/// The CLI maps these onto its exit-code contract: domain, precondition,
/// division-by-zero, length-mismatch, and parse errors are input errors
/// (exit 2); `Precision` means the requested rigor could not be reached
/// within the configured limits (exit 3).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// The input lies outside the mathematical domain of the operation.
    /// `clause` names the violated requirement.
    #[error("domain error: {clause}")]
    Domain { clause: String },

    /// A caller-facing precondition was violated. `clause` names it.
    #[error("precondition violated: {clause}")]
    Precondition { clause: String },

    /// The tail-bound criterion was not met within the iteration cap, or an
    /// enclosure stayed inconclusive after all precision escalations.
    #[error("precision exhausted: {detail}")]
    Precision { detail: String },

    /// An exact denominator (a Pochhammer factor or a certified sequence
    /// entry) evaluated to zero.
    #[error("division by zero: {what}")]
    DivisionByZero { what: String },

    /// Two parameter vectors that must have equal lengths do not.
    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Malformed textual input (rational, grid, or range syntax).
    #[error("parse error on {input:?}: {what}")]
    Parse { input: String, what: String },
}

impl Error {
    pub fn domain(clause: impl Into<String>) -> Self {
        Error::Domain { clause: clause.into() }
    }

    pub fn precondition(clause: impl Into<String>) -> Self {
        Error::Precondition { clause: clause.into() }
    }

    pub fn precision(detail: impl Into<String>) -> Self {
        Error::Precision { detail: detail.into() }
    }

    pub fn division_by_zero(what: impl Into<String>) -> Self {
        Error::DivisionByZero { what: what.into() }
    }

    pub fn length_mismatch(expected: usize, got: usize) -> Self {
        Error::LengthMismatch { expected, got }
    }

    pub fn parse(input: impl Into<String>, what: impl Into<String>) -> Self {
        Error::Parse { input: input.into(), what: what.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
