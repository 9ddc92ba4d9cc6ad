use thiserror::Error;

/// Errors raised across the toolkit.
///
/// The variants mirror how callers are expected to react: domain and usage
/// errors are programming or input mistakes, closure violations carry the
/// element that escaped its level, and glue failures name the violated
/// compatibility criterion.
#[derive(Debug, Error)]
pub enum Error {
    /// Arithmetic outside the domain of an operation (division by zero, inverting zero).
    #[error("domain error: {0}")]
    Domain(String),

    /// Mismatched or incompatible arguments (wrong field, wrong automorphism kind, bad flags).
    #[error("usage error: {0}")]
    Usage(String),

    /// An operation was called on an input that violates its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A transfer, norm or Weyl translate left its target level.
    #[error("closure violation in {op} at level {level}: {witness}")]
    Closure {
        op: String,
        level: u32,
        /// Canonical JSON of the offending G-ring element.
        witness: String,
    },

    /// A gluing compatibility criterion failed.
    #[error("glue rejected by criterion ({criterion}): {detail}")]
    Glue { criterion: u8, detail: String },

    /// The input is not a field-like Tambara functor.
    #[error("not field-like: {0}")]
    NotFieldLike(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
pub(crate) use usage;
