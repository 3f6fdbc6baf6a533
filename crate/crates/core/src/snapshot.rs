//! Point-in-time, read-only views of the gameplay log for analytics.

use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, Utc};
use crate::error::LoadError;
use crate::event::EventRecord;
use crate::ids::PlayerId;
use crate::model::{Game, GameStatus, Player, Round};
use crate::state::{Ledger, ReplayError};
use crate::store::Storage;

/// Selects games by creation time and membership. The default keeps
/// everything, cancelled games included.
#[derive(Debug, Clone, Default)]
pub struct SnapshotFilter {
    pub from: Option<DateTime<Utc>>,
    pub to: Option<DateTime<Utc>>,
    pub players: Option<BTreeSet<PlayerId>>,
}

impl SnapshotFilter {
    pub fn for_player(player: PlayerId) -> Self {
        SnapshotFilter {
            players: Some(BTreeSet::from([player])),
            ..Self::default()
        }
    }

    fn keeps(&self, game: &Game) -> bool {
        self.from.is_none_or(|from| game.created_at >= from)
            && self.to.is_none_or(|to| game.created_at <= to)
            && self
                .players
                .as_ref()
                .is_none_or(|set| game.player_ids.iter().any(|p| set.contains(p)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameRecord {
    pub game: Game,
    /// Ordered by round index.
    pub rounds: Vec<Round>,
}

impl GameRecord {
    pub fn is_cancelled(&self) -> bool {
        self.game.status == GameStatus::Cancelled
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Snapshot {
    /// Sequence number of the last record folded in.
    pub as_of_seq: u64,
    pub first_event_at: Option<DateTime<Utc>>,
    pub last_event_at: Option<DateTime<Utc>>,
    /// Players appearing in the selected games (all players when unfiltered).
    pub players: BTreeMap<PlayerId, Player>,
    /// Ordered by game id.
    pub games: Vec<GameRecord>,
}

impl Snapshot {
    pub fn from_events(
        events: &[EventRecord],
        filter: &SnapshotFilter,
    ) -> Result<Snapshot, ReplayError> {
        let ledger = Ledger::replay(events)?;
        let mut snapshot = Snapshot::from_ledger(&ledger, filter);
        snapshot.first_event_at = events.first().map(|r| r.at);
        snapshot.last_event_at = events.last().map(|r| r.at);
        Ok(snapshot)
    }

    pub fn from_ledger(ledger: &Ledger, filter: &SnapshotFilter) -> Snapshot {
        let games: Vec<GameRecord> = ledger
            .games()
            .filter(|g| filter.keeps(g))
            .map(|g| GameRecord {
                game: g.clone(),
                rounds: ledger.rounds_of(g).into_iter().cloned().collect(),
            })
            .collect();
        let players = if filter.players.is_none() && filter.from.is_none() && filter.to.is_none() {
            ledger.players().map(|p| (p.player_id, p.clone())).collect()
        } else {
            let ids: BTreeSet<PlayerId> = games
                .iter()
                .flat_map(|g| g.game.player_ids.iter().copied())
                .chain(filter.players.iter().flatten().copied())
                .collect();
            ids.into_iter()
                .filter_map(|id| ledger.player(id).map(|p| (id, p.clone())))
                .collect()
        };
        Snapshot {
            as_of_seq: ledger.last_seq(),
            first_event_at: None,
            last_event_at: None,
            players,
            games,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.games.is_empty() && self.players.is_empty()
    }

    pub fn alias(&self, player: PlayerId) -> Option<&str> {
        self.players.get(&player).map(|p| p.alias.as_str())
    }
}

/// Takes a consistent snapshot of a store's event log.
pub fn snapshot_logs(
    storage: &dyn Storage,
    filter: &SnapshotFilter,
) -> Result<Snapshot, LoadError> {
    let events = storage.events()?;
    Ok(Snapshot::from_events(&events, filter)?)
}
