use thiserror::Error;

use crate::rational::Rational;

/// Errors raised by the engines. Each variant maps onto one CLI exit code
/// class (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Well-formed input that names an invalid object, e.g. `T(4,6)`.
    #[error("{0}")]
    Semantic(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A documented precondition of an operation does not hold.
    #[error("contract violated: {0}")]
    Contract(String),

    /// The Hermitian form is certified singular: ω is a root of the
    /// Alexander polynomial.
    #[error("jump point: omega = exp(i*pi*{s}) is a root of the Alexander polynomial")]
    JumpPoint { s: Rational },

    #[error("signature undecidable at s = {s} within {max_bits} bits of precision")]
    Undecidable { s: Rational, max_bits: u32 },

    #[error("validation failure: {0}")]
    Validation(String),

    /// An internal consistency check failed; this signals a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    /// Exit codes: parse = 2, domain = 3, validation = 4, undecidable = 5.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Semantic(_) => 2,
            Error::Domain(_)
            | Error::Argument(_)
            | Error::Unsupported(_)
            | Error::Contract(_)
            | Error::JumpPoint { .. } => 3,
            Error::Validation(_) | Error::Internal(_) => 4,
            Error::Undecidable { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
