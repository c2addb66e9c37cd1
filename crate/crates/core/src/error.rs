use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("pattern `{pattern}` does not embed in B_n for any n <= {bound}")]
    NotFoundWithinBound { pattern: String, bound: usize },

    #[error("undecided: no exhausted ground size found up to n = {0}")]
    Undecided(usize),

    #[error("inconclusive: node budget of {0} exhausted")]
    Inconclusive(u64),

    #[error("unknown pattern literal `{0}`")]
    Pattern(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArguments(msg.into()))
}
