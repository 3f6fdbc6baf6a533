//! In-memory projection of the event log.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::event::{Event, EventRecord};
use crate::ids::{ArticleId, GameId, PlayerId, RoundId};
use crate::model::{
    Bet, FakeSubmission, Game, GameStatus, Phase, Player, Round, ScoreKind, PLAYERS_PER_GAME,
};
use crate::text::normalize;

#[derive(Debug, Error)]
#[error("event {seq} ({kind}): {message}")]
pub struct ReplayError {
    pub seq: u64,
    pub kind: &'static str,
    pub message: String,
}

/// Everything the engine knows, rebuilt by folding event records in order.
#[derive(Debug, Default, Clone)]
pub struct Ledger {
    players: BTreeMap<PlayerId, Player>,
    alias_index: HashMap<String, PlayerId>,
    queue: VecDeque<PlayerId>,
    games: BTreeMap<GameId, Game>,
    rounds: BTreeMap<RoundId, Round>,
    active_game: HashMap<PlayerId, GameId>,
    player_games: HashMap<PlayerId, Vec<GameId>>,
    seen: HashMap<PlayerId, HashSet<ArticleId>>,
    served: HashSet<(RoundId, PlayerId)>,
    last_seq: u64,
}

impl Ledger {
    pub fn replay<'a>(
        records: impl IntoIterator<Item = &'a EventRecord>,
    ) -> Result<Ledger, ReplayError> {
        let mut ledger = Ledger::default();
        for record in records {
            ledger.apply(record)?;
        }
        Ok(ledger)
    }

    pub fn apply(&mut self, record: &EventRecord) -> Result<(), ReplayError> {
        let fail = |message: String| ReplayError {
            seq: record.seq,
            kind: record.event.kind(),
            message,
        };
        if record.seq <= self.last_seq {
            return Err(fail(format!("sequence must exceed {}", self.last_seq)));
        }
        let at = record.at;
        match &record.event {
            Event::Registered { player_id, alias } => {
                if self.players.contains_key(player_id) {
                    return Err(fail(format!("player {player_id} registered twice")));
                }
                self.alias_index.insert(normalize(alias), *player_id);
                self.players.insert(
                    *player_id,
                    Player {
                        player_id: *player_id,
                        alias: alias.clone(),
                        created_at: at,
                        games_played: 0,
                        rounds_played: 0,
                        total_fake_points: 0,
                        total_bet_points: 0,
                    },
                );
            }
            Event::Queued { player_id } => {
                if !self.players.contains_key(player_id) {
                    return Err(fail(format!("unknown player {player_id}")));
                }
                self.queue.push_back(*player_id);
            }
            Event::GameCreated {
                game_id,
                player_ids,
                rng_seed,
                rounds,
                phase_deadline,
            } => {
                if self.games.contains_key(game_id) {
                    return Err(fail(format!("game {game_id} created twice")));
                }
                if let Some(p) = player_ids.iter().find(|p| !self.players.contains_key(p)) {
                    return Err(fail(format!("unknown player {p}")));
                }
                self.queue.retain(|p| !player_ids.contains(p));
                for seed in rounds {
                    self.rounds.insert(
                        seed.round_id,
                        Round {
                            round_id: seed.round_id,
                            game_id: *game_id,
                            index: seed.index,
                            article_id: seed.article_id,
                            truth: seed.headline.clone(),
                            image_ref: seed.image_ref.clone(),
                            phase: Phase::Writing,
                            submissions: BTreeMap::new(),
                            bets: BTreeMap::new(),
                            phase_deadline: Some(*phase_deadline),
                            score_events: Vec::new(),
                            revealed_seq: None,
                        },
                    );
                }
                for p in player_ids {
                    self.active_game.insert(*p, *game_id);
                    self.player_games.entry(*p).or_default().push(*game_id);
                    let seen = self.seen.entry(*p).or_default();
                    seen.extend(rounds.iter().map(|r| r.article_id));
                }
                self.games.insert(
                    *game_id,
                    Game {
                        game_id: *game_id,
                        player_ids: *player_ids,
                        round_ids: [rounds[0].round_id, rounds[1].round_id, rounds[2].round_id],
                        status: GameStatus::InProgress,
                        created_at: at,
                        finished_at: None,
                        rng_seed: *rng_seed,
                    },
                );
            }
            Event::FakeSubmitted {
                round_id,
                player_id,
                text,
                betting_deadline,
                ..
            } => {
                let round = self
                    .rounds
                    .get_mut(round_id)
                    .ok_or_else(|| fail(format!("unknown round {round_id}")))?;
                if round.phase != Phase::Writing {
                    return Err(fail("round is not in the writing phase".into()));
                }
                round.submissions.insert(
                    *player_id,
                    FakeSubmission {
                        player_id: *player_id,
                        text: text.clone(),
                        submitted_at: at,
                    },
                );
                if round.submissions.len() == PLAYERS_PER_GAME {
                    round.phase = Phase::Betting;
                    round.phase_deadline = *betting_deadline;
                }
            }
            Event::OptionsServed {
                round_id,
                viewer_id,
                ..
            } => {
                self.served.insert((*round_id, *viewer_id));
            }
            Event::BetPlaced {
                round_id,
                player_id,
                position,
                choice,
                ..
            } => {
                let round = self
                    .rounds
                    .get_mut(round_id)
                    .ok_or_else(|| fail(format!("unknown round {round_id}")))?;
                if round.phase != Phase::Betting {
                    return Err(fail("round is not in the betting phase".into()));
                }
                round.bets.insert(
                    *player_id,
                    Bet {
                        player_id: *player_id,
                        choice: *choice,
                        position: *position,
                        placed_at: at,
                    },
                );
            }
            Event::RoundScored {
                game_id,
                round_id,
                score_events,
            } => {
                let game = self
                    .games
                    .get(game_id)
                    .ok_or_else(|| fail(format!("unknown game {game_id}")))?;
                let round = self
                    .rounds
                    .get_mut(round_id)
                    .ok_or_else(|| fail(format!("unknown round {round_id}")))?;
                round.phase = Phase::Revealed;
                round.phase_deadline = None;
                round.score_events = score_events.clone();
                round.revealed_seq = Some(record.seq);
                for p in &game.player_ids {
                    if let Some(player) = self.players.get_mut(p) {
                        player.rounds_played += 1;
                    }
                }
                for event in score_events {
                    if let Some(player) = self.players.get_mut(&event.beneficiary_player_id) {
                        match event.kind {
                            ScoreKind::Fooled => player.total_fake_points += event.points,
                            ScoreKind::CorrectBet => player.total_bet_points += event.points,
                        }
                    }
                }
            }
            Event::GameFinished { game_id } => {
                let game = self
                    .games
                    .get_mut(game_id)
                    .ok_or_else(|| fail(format!("unknown game {game_id}")))?;
                game.status = GameStatus::Finished;
                game.finished_at = Some(at);
                for p in &game.player_ids {
                    self.active_game.remove(p);
                    if let Some(player) = self.players.get_mut(p) {
                        player.games_played += 1;
                    }
                }
            }
            Event::GameCancelled { game_id, .. } => {
                let game = self
                    .games
                    .get_mut(game_id)
                    .ok_or_else(|| fail(format!("unknown game {game_id}")))?;
                game.status = GameStatus::Cancelled;
                let players = game.player_ids;
                // Points from a cancelled game never count: undo what its
                // revealed rounds added to the aggregates.
                for round_id in &game.round_ids {
                    let Some(round) = self.rounds.get(round_id) else {
                        continue;
                    };
                    if round.phase != Phase::Revealed {
                        continue;
                    }
                    for p in &players {
                        if let Some(player) = self.players.get_mut(p) {
                            player.rounds_played = player.rounds_played.saturating_sub(1);
                        }
                    }
                    for event in &round.score_events {
                        if let Some(player) = self.players.get_mut(&event.beneficiary_player_id) {
                            match event.kind {
                                ScoreKind::Fooled => {
                                    player.total_fake_points =
                                        player.total_fake_points.saturating_sub(event.points)
                                }
                                ScoreKind::CorrectBet => {
                                    player.total_bet_points =
                                        player.total_bet_points.saturating_sub(event.points)
                                }
                            }
                        }
                    }
                }
                for p in &players {
                    self.active_game.remove(p);
                }
                self.queue.retain(|p| !players.contains(p));
            }
        }
        self.last_seq = record.seq;
        Ok(())
    }

    pub fn last_seq(&self) -> u64 {
        self.last_seq
    }

    pub fn player(&self, id: PlayerId) -> Option<&Player> {
        self.players.get(&id)
    }

    pub fn players(&self) -> impl Iterator<Item = &Player> {
        self.players.values()
    }

    /// Looks up by normalized alias.
    pub fn player_by_alias(&self, alias: &str) -> Option<PlayerId> {
        self.alias_index.get(&normalize(alias)).copied()
    }

    pub fn queue(&self) -> &VecDeque<PlayerId> {
        &self.queue
    }

    /// 1-based.
    pub fn queue_position(&self, player: PlayerId) -> Option<usize> {
        self.queue.iter().position(|p| *p == player).map(|i| i + 1)
    }

    pub fn active_game(&self, player: PlayerId) -> Option<GameId> {
        self.active_game.get(&player).copied()
    }

    pub fn game(&self, id: GameId) -> Option<&Game> {
        self.games.get(&id)
    }

    pub fn games(&self) -> impl Iterator<Item = &Game> {
        self.games.values()
    }

    pub fn games_of(&self, player: PlayerId) -> &[GameId] {
        self.player_games
            .get(&player)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn round(&self, id: RoundId) -> Option<&Round> {
        self.rounds.get(&id)
    }

    pub fn rounds_of(&self, game: &Game) -> Vec<&Round> {
        game.round_ids
            .iter()
            .filter_map(|id| self.rounds.get(id))
            .collect()
    }

    pub fn seen_by(&self, player: PlayerId) -> Option<&HashSet<ArticleId>> {
        self.seen.get(&player)
    }

    pub fn options_served(&self, round: RoundId, viewer: PlayerId) -> bool {
        self.served.contains(&(round, viewer))
    }

    pub fn next_player_id(&self) -> PlayerId {
        PlayerId(self.players.keys().next_back().map_or(1, |p| p.0 + 1))
    }

    pub fn next_game_id(&self) -> GameId {
        GameId(self.games.keys().next_back().map_or(1, |g| g.0 + 1))
    }

    pub fn next_round_id(&self) -> RoundId {
        RoundId(self.rounds.keys().next_back().map_or(1, |r| r.0 + 1))
    }
}
