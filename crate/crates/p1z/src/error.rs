//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
///
/// The variants map onto the CLI exit codes: domain, degenerate-matrix,
/// convergence and invariant errors exit with 1, parse errors with 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A precondition of the named operation was violated.
    Domain { op: &'static str, reason: String },
    /// Malformed text input; `pos` is a byte offset into the input.
    Parse { pos: usize, reason: String },
    /// A transition matrix whose determinant is not a unit monomial.
    DegenerateMatrix { reason: String },
    /// A numerical routine exhausted its budget before reaching tolerance.
    Convergence { what: &'static str },
    /// Two routes that must agree exactly disagreed. Unreachable unless the
    /// library itself is wrong.
    InvariantViolation { what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { op, reason } => write!(f, "domain error in {op}: {reason}"),
            Error::Parse { pos, reason } => write!(f, "parse error at byte {pos}: {reason}"),
            Error::DegenerateMatrix { reason } => write!(f, "degenerate matrix: {reason}"),
            Error::Convergence { what } => write!(f, "failed to converge: {what}"),
            Error::InvariantViolation { what } => write!(f, "invariant violation: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
