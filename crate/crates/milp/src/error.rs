use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MilpError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("duplicate constraint name `{0}`")]
    DuplicateConstraint(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid name `{0}`: names must be nonempty and contain no whitespace")]
    InvalidName(String),
    #[error("non-finite coefficient in `{0}`")]
    NonFinite(String),
    #[error("invalid bounds for `{name}`: [{lower}, {upper}]")]
    InvalidBounds { name: String, lower: f64, upper: f64 },
    #[error("objective term on `{0}` has no cost category")]
    UntaggedObjective(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("solution has no value for variable `{0}`")]
    MissingValue(String),
    #[error("solver command is empty or malformed: `{0}`")]
    BadCommand(String),
    #[error("solver unavailable: {0}")]
    SolverUnavailable(String),
    #[error("solver exited with status {code:?}: {stderr}")]
    SolverFailed { code: Option<i32>, stderr: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed solution: {0}")]
    Solution(String),
}

impl MilpError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        MilpError::Io {
            path: path.into(),
            source,
        }
    }
}
