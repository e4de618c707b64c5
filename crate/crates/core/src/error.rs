use alloc::string::String;
use core::fmt;

/// Failure taxonomy shared by every kernel in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// The working precision cannot certify the requested result.
    Precision {
        what: String,
        required_bits: u64,
        available_bits: u64,
    },
    /// A denominator vanished or came within the singularity threshold.
    Singular(String),
    /// Input is valid in general but degenerate for this construction.
    Degenerate(String),
    /// An internal identity failed; indicates an arithmetic bug.
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precision(what: impl Into<String>, required_bits: u64, available_bits: u64) -> Self {
        Error::Precision {
            what: what.into(),
            required_bits,
            available_bits,
        }
    }

    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singular(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Precision {
                what,
                required_bits,
                available_bits,
            } => write!(
                f,
                "precision error: {what} (needs {required_bits} bits, have {available_bits})"
            ),
            Error::Singular(m) => write!(f, "singular input: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Error::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
