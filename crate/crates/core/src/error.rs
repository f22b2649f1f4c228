use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid data: {0}")]
    Data(String),

    #[error("duplicate document id {0}")]
    DuplicateDocument(u32),

    #[error("minimum pair frequency must be at least 1, got {0}")]
    InvalidThreshold(u32),

    #[error("SVD rank must be at least 1")]
    InvalidRank,

    #[error("empty matrix: {0}")]
    EmptyMatrix(String),

    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },

    #[error("unknown ranker `{0}`")]
    UnknownRanker(String),

    #[error("unknown pair `{0}`")]
    UnknownPair(String),

    #[error("unsupported format in {path}: expected header `{expected}`, found `{found}`")]
    Format {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit code: 1 for usage and configuration problems, 2 for bad data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidThreshold(_) | Error::InvalidRank | Error::UnknownRanker(_) | Error::Config(_) => 1,
            _ => 2,
        }
    }
}
