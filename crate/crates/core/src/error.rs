use std::path::PathBuf;

use thiserror::Error;

/// Every failure the engine can report. Variants map onto the error classes
/// named by each operation's contract.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: lo={lo} > hi={hi}")]
    InvalidRange { lo: i64, hi: i64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("redundancy undefined for a distribution of length {0} (need at least 2)")]
    UndefinedRedundancy(usize),

    #[error("invalid symbol grid: {0}")]
    InvalidGrid(String),

    #[error("block {block_w}x{block_h} does not tile a {width}x{height} grid")]
    Tiling {
        block_w: usize,
        block_h: usize,
        width: usize,
        height: usize,
    },

    #[error("semantic space with {0} properties is too large to enumerate (max 20)")]
    EnumerationTooLarge(usize),

    #[error("n-corner order must be at least 3, got {0}")]
    InvalidOrder(usize),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("template error: {0}")]
    Template(String),

    #[error("template references an empty `{0}` pool")]
    MissingPool(&'static str),

    #[error("lexicon error: {0}")]
    Lexicon(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("spectrum validation error at line {line}, column `{column}`: {msg}")]
    SpectrumValidation { line: usize, column: String, msg: String },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("manifest written by engine `{found}`, this is `{expected}`; refusing to replay")]
    VersionMismatch { found: String, expected: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
