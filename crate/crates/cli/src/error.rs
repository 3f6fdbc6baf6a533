use std::path::PathBuf;

use fakeyou_analytics::AnalyticsError;
use fakeyou_core::{GameError, LoadError, StoreError};
use fakeyou_ingest::{ConfigError, IngestError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid bot policy `{0}`: expected random, truth:<p> with p in [0,1], or template:<sensational|plain|echo>")]
    InvalidPolicy(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error("cannot bind {addr}: {source}")]
    Bind {
        addr: String,
        source: std::io::Error,
    },
    #[error("i/o failure on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::InvalidPolicy(_) | CliError::InvalidArgument(_) => "InvalidArgument",
            CliError::Game(e) => e.code(),
            CliError::Load(LoadError::Storage(e)) | CliError::Store(e) => store_code(e),
            CliError::Load(LoadError::Replay(_)) => "CorruptLog",
            CliError::Config(_) => "InvalidConfig",
            CliError::Ingest(e) => e.code(),
            CliError::Analytics(_) => "AnalyticsFailure",
            CliError::Bind { .. } => "BindFailed",
            CliError::Io { .. } => "IoFailure",
        }
    }

    /// Offending line of a corrupt log, when known.
    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Load(LoadError::Storage(StoreError::Corrupt { line, .. }))
            | CliError::Store(StoreError::Corrupt { line, .. }) => Some(*line).filter(|l| *l > 0),
            _ => None,
        }
    }

    /// The single-line machine-readable form printed on stderr.
    pub fn to_json(&self) -> String {
        let mut body = serde_json::json!({ "code": self.code(), "message": self.to_string() });
        if let Some(line) = self.line() {
            body["line"] = line.into();
        }
        body.to_string()
    }
}

fn store_code(err: &StoreError) -> &'static str {
    match err {
        StoreError::Corrupt { .. } => "CorruptLog",
        _ => "StorageFailure",
    }
}
