use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("interval union is empty")]
    EmptySet,
    #[error("value {value} is outside the range [{lo}, {hi}]")]
    Range { value: u64, lo: u64, hi: u64 },
    #[error("boundary set has odd size {0}")]
    Parity(usize),
    #[error("value set of size {size} does not fit in dimension {d}")]
    Size { size: usize, d: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("family is empty")]
    EmptyFamily,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
