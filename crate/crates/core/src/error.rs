use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("unexpected end of stream while reading {0}")]
    Truncated(&'static str),

    #[error("format error: {0}")]
    Format(String),

    #[error("corrupt data: {0}")]
    Corrupt(String),

    #[error("empty block: a block needs at least two samples")]
    EmptyBlock,

    #[error("malformed block: {0}")]
    MalformedBlock(String),

    #[error("timestamp {0} is outside every sub-trajectory and matches no outlier")]
    OutOfRange(f64),
}

impl Error {
    /// True for errors caused by the bytes of a container rather than by the caller.
    pub fn is_format_error(&self) -> bool {
        matches!(
            self,
            Error::Truncated(_) | Error::Format(_) | Error::Corrupt(_) | Error::MalformedBlock(_)
        )
    }
}
