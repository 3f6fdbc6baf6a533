//! Gameplay event log records. The log is the source of truth: replaying it
//! rebuilds every game, round and player aggregate.

use std::io::{BufRead, Write};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ids::{ArticleId, GameId, PlayerId, RoundId};
use crate::model::{Provenance, ScoreEvent, PLAYERS_PER_GAME, ROUNDS_PER_GAME};

/// One line of the exported log:
/// `{"seq":1,"at":"2020-06-01T00:00:00Z","kind":"Registered","payload":{...}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub seq: u64,
    pub at: DateTime<Utc>,
    #[serde(flatten)]
    pub event: Event,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundSeed {
    pub round_id: RoundId,
    pub index: u8,
    pub article_id: ArticleId,
    pub headline: String,
    pub image_ref: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum Event {
    Registered {
        player_id: PlayerId,
        alias: String,
    },
    Queued {
        player_id: PlayerId,
    },
    GameCreated {
        game_id: GameId,
        player_ids: [PlayerId; PLAYERS_PER_GAME],
        rng_seed: u64,
        rounds: [RoundSeed; ROUNDS_PER_GAME],
        phase_deadline: DateTime<Utc>,
    },
    FakeSubmitted {
        game_id: GameId,
        round_id: RoundId,
        player_id: PlayerId,
        text: String,
        /// Set when this submission completes the round and opens betting.
        betting_deadline: Option<DateTime<Utc>>,
    },
    OptionsServed {
        game_id: GameId,
        round_id: RoundId,
        viewer_id: PlayerId,
        order: Vec<Provenance>,
    },
    BetPlaced {
        game_id: GameId,
        round_id: RoundId,
        player_id: PlayerId,
        position: u8,
        choice: Provenance,
    },
    RoundScored {
        game_id: GameId,
        round_id: RoundId,
        score_events: Vec<ScoreEvent>,
    },
    GameFinished {
        game_id: GameId,
    },
    GameCancelled {
        game_id: GameId,
        reason: String,
    },
}

impl Event {
    pub fn kind(&self) -> &'static str {
        match self {
            Event::Registered { .. } => "Registered",
            Event::Queued { .. } => "Queued",
            Event::GameCreated { .. } => "GameCreated",
            Event::FakeSubmitted { .. } => "FakeSubmitted",
            Event::OptionsServed { .. } => "OptionsServed",
            Event::BetPlaced { .. } => "BetPlaced",
            Event::RoundScored { .. } => "RoundScored",
            Event::GameFinished { .. } => "GameFinished",
            Event::GameCancelled { .. } => "GameCancelled",
        }
    }
}

#[derive(Debug, Error)]
pub enum LogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: sequence number {seq} does not increase")]
    Sequence { line: usize, seq: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LogError {
    pub fn line(&self) -> Option<usize> {
        match self {
            LogError::Parse { line, .. } | LogError::Sequence { line, .. } => Some(*line),
            LogError::Io(_) => None,
        }
    }
}

/// Writes one JSON record per line.
pub fn write_log<W: Write>(mut out: W, records: &[EventRecord]) -> std::io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Parses a log written by [`write_log`]. Blank lines are skipped; line
/// numbers in errors are 1-based.
pub fn read_log<R: BufRead>(input: R) -> Result<Vec<EventRecord>, LogError> {
    let mut records: Vec<EventRecord> = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: EventRecord = serde_json::from_str(&line).map_err(|e| LogError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if records.last().is_some_and(|prev| prev.seq >= record.seq) {
            return Err(LogError::Sequence {
                line: line_no,
                seq: record.seq,
            });
        }
        records.push(record);
    }
    Ok(records)
}
