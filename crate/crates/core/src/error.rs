use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A documented precondition does not hold. `clause` names it.
    Precondition { clause: String, detail: String },
    /// Structurally malformed input (wrong lengths, out-of-range points).
    Invalid(String),
    /// A theorem-guaranteed property failed. Indicates a bug.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn pre(clause: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precondition { clause: clause.into(), detail: detail.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Precondition { clause, detail } => {
                write!(f, "precondition `{clause}` violated: {detail}")
            }
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::Internal(m) => write!(f, "internal invariant broken: {m}"),
        }
    }
}
