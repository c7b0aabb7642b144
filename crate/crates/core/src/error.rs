use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("{file}, row {row}, field `{field}`: {message}")]
    Schema {
        file: String,
        row: usize,
        field: String,
        message: String,
    },
    #[error("duplicate id `{id}` in {file}")]
    DuplicateId { file: String, id: String },
    #[error("{file}: `{id}` refers to unknown {kind} `{target}`")]
    DanglingReference {
        file: String,
        id: String,
        kind: &'static str,
        target: String,
    },
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("unit error: {0}")]
    Unit(String),
    #[error("no regional multiplier for plant `{plant}` in state `{state}`")]
    UnknownState { plant: String, state: String },
    #[error("missing input: {0}")]
    Missing(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV error in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error(transparent)]
    Milp(#[from] jpong_milp::MilpError),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

impl CoreError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CoreError::Invalid(msg.into())
    }
}
