use thiserror::Error;

use crate::ids::{GameId, PlayerId};
use crate::state::ReplayError;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("unauthorized")]
    Unauthorized,
    #[error("storage i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt record in {file} at line {line}: {message}")]
    Corrupt {
        file: String,
        line: usize,
        message: String,
    },
    #[error("serialization failure: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Every failure a game operation can report.
#[derive(Debug, Error)]
pub enum GameError {
    #[error("alias must not be empty")]
    EmptyAlias,
    #[error("alias is already taken")]
    AliasTaken,
    #[error("unknown player {0}")]
    UnknownPlayer(PlayerId),
    #[error("unknown game {0}")]
    UnknownGame(GameId),
    #[error("round index {0} out of range")]
    UnknownRound(usize),
    #[error("player is already queued")]
    AlreadyQueued,
    #[error("player is already in a running game")]
    AlreadyPlaying,
    #[error("not enough articles: need {needed}, have {available}")]
    InsufficientArticles { needed: usize, available: usize },
    #[error("player is not a member of this game")]
    NotMember,
    #[error("operation not allowed in the current phase")]
    WrongPhase,
    #[error("fake headline already submitted for this round")]
    AlreadySubmitted,
    #[error("fake headline must not be empty")]
    EmptyText,
    #[error("fake headline matches the original headline")]
    MatchesTruth,
    #[error("fake headline duplicates another submission")]
    DuplicateFake,
    #[error("bet already placed for this round")]
    AlreadyBet,
    #[error("option position must be 1, 2 or 3")]
    InvalidOption,
    #[error("round is not ready to be scored")]
    NotReady,
    #[error("round has already been scored")]
    AlreadyScored,
    #[error("unauthorized")]
    Unauthorized,
    #[error(transparent)]
    Storage(StoreError),
}

impl From<StoreError> for GameError {
    fn from(err: StoreError) -> Self {
        match err {
            StoreError::Unauthorized => GameError::Unauthorized,
            other => GameError::Storage(other),
        }
    }
}

impl GameError {
    /// Stable machine-readable name, used on the wire and in CLI errors.
    pub fn code(&self) -> &'static str {
        match self {
            GameError::EmptyAlias => "EmptyAlias",
            GameError::AliasTaken => "AliasTaken",
            GameError::UnknownPlayer(_) => "UnknownPlayer",
            GameError::UnknownGame(_) => "UnknownGame",
            GameError::UnknownRound(_) => "UnknownRound",
            GameError::AlreadyQueued => "AlreadyQueued",
            GameError::AlreadyPlaying => "AlreadyPlaying",
            GameError::InsufficientArticles { .. } => "InsufficientArticles",
            GameError::NotMember => "NotMember",
            GameError::WrongPhase => "WrongPhase",
            GameError::AlreadySubmitted => "AlreadySubmitted",
            GameError::EmptyText => "EmptyText",
            GameError::MatchesTruth => "MatchesTruth",
            GameError::DuplicateFake => "DuplicateFake",
            GameError::AlreadyBet => "AlreadyBet",
            GameError::InvalidOption => "InvalidOption",
            GameError::NotReady => "NotReady",
            GameError::AlreadyScored => "AlreadyScored",
            GameError::Unauthorized => "Unauthorized",
            GameError::Storage(_) => "StorageFailure",
        }
    }
}

/// Failure to rebuild state from storage.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Storage(#[from] StoreError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
}
