//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the library.
///
/// `Constraint` carries the *name* of the violated inequality so callers
/// (and the CLI exit path) can report exactly which admissibility condition
/// failed rather than a generic "bad parameters".
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A structural precondition on an argument failed (wrong range, not
    /// prime, not sorted, ...).
    Invalid(String),
    /// A named parameter constraint from the construction is violated.
    Constraint { name: &'static str, detail: String },
    /// The requested operation would silently produce garbage (for example
    /// quadrature on an under-resolved oscillatory integrand); the payload
    /// is a sizing diagnostic.
    Resolution(String),
    /// Serialized data (box-system lines, bump cache) failed to decode.
    Format(String),
    /// An I/O error wrapped with context.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid argument: {msg}"),
            Error::Constraint { name, detail } => {
                write!(f, "constraint `{name}` violated: {detail}")
            }
            Error::Resolution(msg) => write!(f, "resolution check failed: {msg}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn constraint(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Constraint {
            name,
            detail: detail.into(),
        }
    }
}
