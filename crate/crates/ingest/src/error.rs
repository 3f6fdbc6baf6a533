use std::path::PathBuf;

use fakeyou_core::StoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("source {source_name}: {message}")]
    Invalid {
        source_name: String,
        message: String,
    },
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("fixture parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("headline not found")]
    HeadlineNotFound,
    #[error("image not found")]
    ImageNotFound,
    #[error("invalid selector rule {0:?}")]
    BadRule(String),
}

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("{location}: {message}")]
    Failed { location: String, message: String },
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("source {source_name} unreachable: {message}")]
    SourceUnreachable {
        source_name: String,
        message: String,
    },
    #[error("storage failure: {0}")]
    Storage(#[from] StoreError),
}

impl IngestError {
    pub fn code(&self) -> &'static str {
        match self {
            IngestError::Config(_) => "InvalidConfig",
            IngestError::Fixture(FixtureError::Parse { .. }) => "ParseError",
            IngestError::Fixture(FixtureError::Io { .. }) => "SourceUnreachable",
            IngestError::SourceUnreachable { .. } => "SourceUnreachable",
            IngestError::Storage(_) => "StorageFailure",
        }
    }
}
