use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad argument or malformed input.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Parse failure with a byte position into the offending text.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A configured enumeration or memory cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code convention: 2 usage, 3 resource cap, 4 invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Parse { .. } => 2,
            Error::ResourceCap(_) => 3,
            Error::Invariant(_) => 4,
            Error::Io(_) => 1,
        }
    }
}
