use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument `{0}` is not in the framework")]
    UnknownArgument(String),

    #[error("set is not conflict-free: `{attacker}` attacks `{target}` inside it")]
    NotConflictFree { attacker: String, target: String },

    #[error("labelling domains overlap on argument id {0}")]
    OverlappingDomains(u32),

    #[error("framework has {arguments} arguments, exceeding the brute-force bound of {bound}")]
    OracleBoundExceeded { arguments: usize, bound: usize },

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("deadline exceeded")]
    Timeout,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    FileIo {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wraps an I/O error with the path it concerns.
    pub fn file_io(path: impl Into<std::path::PathBuf>, source: std::io::Error) -> Self {
        Error::FileIo {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
