use std::fmt;

/// Crate-wide error type.
///
/// The variants map onto the CLI exit codes: parameter/domain/format/io
/// errors exit 1, `Uncorrectable` exits 2, `Internal` exits 3.
#[derive(Debug)]
pub enum Error {
    /// Invalid argument or precondition violation (bad alphabet, bad q,
    /// out-of-range index, size mismatch, ...).
    Parameter(String),
    /// Input outside the mathematical domain of the operation
    /// (e.g. inverting 0 mod q).
    Domain(String),
    /// Malformed serialized data (sketch bits, cache file, string file).
    Format(String),
    /// The received word is not within the correctable deletion model of
    /// any codeword; decoding cannot succeed.
    Uncorrectable(String),
    /// An invariant the construction guarantees was violated. Always a
    /// defect, never an expected runtime outcome.
    Internal(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(m) => write!(f, "parameter error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Format(m) => write!(f, "format error: {m}"),
            Error::Uncorrectable(m) => write!(f, "uncorrectable: {m}"),
            Error::Internal(m) => write!(f, "internal invariant violation: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl Error {
    /// Process exit code for the CLI: 1 usage/parameter, 2 uncorrectable,
    /// 3 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Domain(_) | Error::Format(_) | Error::Io(_) => 1,
            Error::Uncorrectable(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
