use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: probability {value} is outside (0, 1]")]
    ProbabilityOutOfRange {
        path: PathBuf,
        line: usize,
        value: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge {src} -> {dst} has no probability loaded from file")]
    MissingProbability { src: String, dst: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("seed set is empty")]
    EmptySeedSet,

    #[error("node id {id} is out of range for a graph with {n} nodes")]
    InvalidNode { id: usize, n: usize },

    #[error("unknown node label {0:?}")]
    UnknownLabel(String),

    #[error("node {0} is already a seed")]
    NodeIsSeed(usize),

    #[error("exact enumeration needs {branches} branches, above the cap of {cap}")]
    EnumerationCap { branches: u128, cap: u128 },

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("config line {line}: key {key:?}: {message}")]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error("no results to write")]
    NoResults,

    #[error("results share no budget across two or more algorithms")]
    NoSharedBudgets,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
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
}
