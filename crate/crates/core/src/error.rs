use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("{what}: {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("ledger error at line {line}: {message}")]
    Ledger { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn too_large(what: &'static str, size: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::TooLarge {
            what,
            size: size.into(),
            limit: limit.into(),
        }
    }

    /// True for refusals caused by a size cap rather than bad input.
    pub fn is_cap_refusal(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}
