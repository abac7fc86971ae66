use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} not found in {}", dir.display())]
    MissingFile { dir: PathBuf, name: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("blank query")]
    BlankQuery,

    #[error("no queries survived ingest of {}", path.display())]
    NoQueries { path: PathBuf },

    #[error("pair ({a}, {b}) appears more than once in the score list")]
    DuplicatePair { a: u32, b: u32 },

    #[error("pair ({a}, {b}) is not a pair of distinct queries")]
    InvalidPair { a: u32, b: u32 },

    #[error("score references query {id}, which is not a node of the graph")]
    UnknownNode { id: u32 },

    #[error("stale score cache {}: {reason}; delete it and rerun `querynet build` to rebuild", path.display())]
    StaleCache { path: PathBuf, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(file: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: file.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: 1 usage, 2 data/parse, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Io { .. } | Error::MissingFile { .. } => 3,
            Error::Parse { .. }
            | Error::BlankQuery
            | Error::NoQueries { .. }
            | Error::DuplicatePair { .. }
            | Error::InvalidPair { .. }
            | Error::UnknownNode { .. }
            | Error::StaleCache { .. } => 2,
        }
    }
}
