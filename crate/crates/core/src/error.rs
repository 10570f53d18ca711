use thiserror::Error;

/// Errors raised by the index structures, the parser and the factor codecs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} {index} out of range (length {len})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal invariant no longer holds. Never expected in practice.
    #[error("internal invariant breach: {0}")]
    Corrupt(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range<T>(what: &'static str, index: usize, len: usize) -> Result<T> {
    Err(Error::OutOfRange { what, index, len })
}
