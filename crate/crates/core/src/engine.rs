//! The game service: validates commands, appends the resulting events to
//! storage and folds them into the in-memory ledger.
//!
//! All mutations run under one write lock, so each game sees a single
//! writer and the log order equals the order in which state changed.

use std::sync::Arc;

use chrono::{DateTime, Duration, Utc};
use parking_lot::{Mutex, RwLock};
use rand::rngs::StdRng;
use rand::{RngCore, SeedableRng};

use crate::clock::{Clock, SystemClock};
use crate::error::{GameError, LoadError};
use crate::event::{Event, EventRecord, RoundSeed};
use crate::ids::{GameId, PlayerId, RoundId};
use crate::matchmaking::select_articles;
use crate::model::{
    AuthToken, Bet, Game, GameStatus, OptionSet, Phase, Player, Provenance, Round, PLAYERS_PER_GAME,
    ROUNDS_PER_GAME,
};
use crate::options::option_set;
use crate::scoring::{score_round, summarize, GameSummary};
use crate::seed;
use crate::snapshot::{Snapshot, SnapshotFilter};
use crate::state::Ledger;
use crate::store::{MemoryStore, Storage};
use crate::text::{normalize, same_text};

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Root of every game seed; fixes article draws and option orders.
    pub seed: u64,
    /// How long a round may sit in one phase before the game is cancelled.
    pub phase_timeout: Duration,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            seed: 0,
            phase_timeout: Duration::hours(24),
        }
    }
}

pub struct Engine {
    storage: Arc<dyn Storage>,
    clock: Arc<dyn Clock>,
    config: EngineConfig,
    ledger: RwLock<Ledger>,
    token_rng: Mutex<StdRng>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("config", &self.config)
            .field("last_seq", &self.ledger.read().last_seq())
            .finish_non_exhaustive()
    }
}

impl Engine {
    /// Rebuilds state by replaying the storage's event log.
    pub fn open(
        storage: Arc<dyn Storage>,
        clock: Arc<dyn Clock>,
        config: EngineConfig,
    ) -> Result<Engine, LoadError> {
        let ledger = Ledger::replay(&storage.events()?)?;
        Ok(Engine {
            storage,
            clock,
            config,
            ledger: RwLock::new(ledger),
            token_rng: Mutex::new(StdRng::from_os_rng()),
        })
    }

    /// Fresh in-memory engine on the system clock.
    pub fn in_memory(config: EngineConfig) -> Engine {
        Engine::open(Arc::new(MemoryStore::new()), Arc::new(SystemClock), config)
            .expect("empty log replays")
    }

    pub fn storage(&self) -> &Arc<dyn Storage> {
        &self.storage
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn now(&self) -> DateTime<Utc> {
        self.clock.now()
    }

    /// Runs `f` against the current state under a read lock.
    pub fn read<T>(&self, f: impl FnOnce(&Ledger) -> T) -> T {
        f(&self.ledger.read())
    }

    fn commit(
        &self,
        ledger: &mut Ledger,
        at: DateTime<Utc>,
        events: Vec<Event>,
    ) -> Result<Vec<EventRecord>, GameError> {
        let records = self
            .storage
            .append_events(events.into_iter().map(|e| (at, e)).collect())?;
        for record in &records {
            ledger
                .apply(record)
                .expect("validated events always apply to the ledger");
        }
        Ok(records)
    }

    pub fn register_player(&self, alias: &str) -> Result<(Player, AuthToken), GameError> {
        let alias = alias.trim();
        if alias.is_empty() {
            return Err(GameError::EmptyAlias);
        }
        let mut ledger = self.ledger.write();
        if ledger.player_by_alias(alias).is_some() {
            return Err(GameError::AliasTaken);
        }
        let player_id = ledger.next_player_id();
        let at = self.clock.now();
        self.commit(
            &mut ledger,
            at,
            vec![Event::Registered {
                player_id,
                alias: alias.to_owned(),
            }],
        )?;
        let token = self.issue_token(player_id, at)?;
        let player = ledger.player(player_id).cloned().expect("just registered");
        Ok((player, token))
    }

    fn issue_token(&self, player_id: PlayerId, at: DateTime<Utc>) -> Result<AuthToken, GameError> {
        let mut bytes = [0u8; 32];
        self.token_rng.lock().fill_bytes(&mut bytes);
        let token = AuthToken {
            token: hex::encode(bytes),
            player_id,
            issued_at: at,
        };
        self.storage.store_token(&token)?;
        Ok(token)
    }

    pub fn resolve_token(&self, token: &str) -> Result<PlayerId, GameError> {
        Ok(self.storage.resolve_token(token)?)
    }

    pub fn revoke_token(&self, token: &str) -> Result<(), GameError> {
        Ok(self.storage.revoke_token(token)?)
    }

    /// Appends the player to the matchmaking queue; returns the 1-based
    /// position.
    pub fn enqueue(&self, player_id: PlayerId) -> Result<usize, GameError> {
        let mut ledger = self.ledger.write();
        if ledger.player(player_id).is_none() {
            return Err(GameError::UnknownPlayer(player_id));
        }
        if ledger.queue_position(player_id).is_some() {
            return Err(GameError::AlreadyQueued);
        }
        if ledger.active_game(player_id).is_some() {
            return Err(GameError::AlreadyPlaying);
        }
        let at = self.clock.now();
        self.commit(&mut ledger, at, vec![Event::Queued { player_id }])?;
        Ok(ledger.queue().len())
    }

    /// Starts one game from the three longest-waiting players, if there are
    /// three. On failure the queue is left untouched.
    pub fn matchmake(&self) -> Result<Option<Game>, GameError> {
        let mut ledger = self.ledger.write();
        if ledger.queue().len() < PLAYERS_PER_GAME {
            return Ok(None);
        }
        let player_ids = [ledger.queue()[0], ledger.queue()[1], ledger.queue()[2]];
        let game_id = ledger.next_game_id();
        let rng_seed = seed::mix(&[self.config.seed, game_id.0]);
        let mut rng = seed::rng_for(&[rng_seed, 0x5e1ec7]);
        let articles = self.storage.articles()?;
        let chosen = select_articles(&articles, &ledger, ROUNDS_PER_GAME, &player_ids, &mut rng)?;

        let first_round = ledger.next_round_id().0;
        let rounds: [RoundSeed; ROUNDS_PER_GAME] = std::array::from_fn(|i| RoundSeed {
            round_id: RoundId(first_round + i as u64),
            index: i as u8,
            article_id: chosen[i].article_id,
            headline: chosen[i].headline.clone(),
            image_ref: chosen[i].image_ref.clone(),
        });
        let at = self.clock.now();
        self.commit(
            &mut ledger,
            at,
            vec![Event::GameCreated {
                game_id,
                player_ids,
                rng_seed,
                rounds,
                phase_deadline: at + self.config.phase_timeout,
            }],
        )?;
        Ok(ledger.game(game_id).cloned())
    }

    pub fn submit_fake(
        &self,
        game_id: GameId,
        round_index: usize,
        player_id: PlayerId,
        text: &str,
    ) -> Result<Round, GameError> {
        let mut ledger = self.ledger.write();
        let (game, round) = locate(&ledger, game_id, round_index, player_id)?;
        if round.submissions.contains_key(&player_id) {
            return Err(GameError::AlreadySubmitted);
        }
        if game.status != GameStatus::InProgress || round.phase != Phase::Writing {
            return Err(GameError::WrongPhase);
        }
        let text = text.trim();
        if text.is_empty() {
            return Err(GameError::EmptyText);
        }
        if same_text(text, &round.truth) {
            return Err(GameError::MatchesTruth);
        }
        let normalized = normalize(text);
        if round
            .submissions
            .values()
            .any(|s| normalize(&s.text) == normalized)
        {
            return Err(GameError::DuplicateFake);
        }
        let at = self.clock.now();
        let completes = round.submissions.len() + 1 == PLAYERS_PER_GAME;
        let event = Event::FakeSubmitted {
            game_id,
            round_id: round.round_id,
            player_id,
            text: text.to_owned(),
            betting_deadline: completes.then(|| at + self.config.phase_timeout),
        };
        let round_id = round.round_id;
        self.commit(&mut ledger, at, vec![event])?;
        Ok(ledger.round(round_id).cloned().expect("round exists"))
    }

    /// The viewer's option set. The first retrieval is logged.
    pub fn get_options(
        &self,
        game_id: GameId,
        round_index: usize,
        viewer: PlayerId,
    ) -> Result<OptionSet, GameError> {
        let mut ledger = self.ledger.write();
        let (game, round) = locate(&ledger, game_id, round_index, viewer)?;
        let options = option_set(game, round, viewer)?;
        if !ledger.options_served(round.round_id, viewer) {
            let event = Event::OptionsServed {
                game_id,
                round_id: round.round_id,
                viewer_id: viewer,
                order: options.provenances(),
            };
            let at = self.clock.now();
            self.commit(&mut ledger, at, vec![event])?;
        }
        Ok(options)
    }

    /// Places a bet on a 1-based option position. The third bet scores the
    /// round, and the last scored round finishes the game, in the same
    /// atomic append.
    pub fn place_bet(
        &self,
        game_id: GameId,
        round_index: usize,
        player_id: PlayerId,
        position: usize,
    ) -> Result<Round, GameError> {
        let mut ledger = self.ledger.write();
        let (game, round) = locate(&ledger, game_id, round_index, player_id)?;
        if round.bets.contains_key(&player_id) {
            return Err(GameError::AlreadyBet);
        }
        if game.status != GameStatus::InProgress || round.phase != Phase::Betting {
            return Err(GameError::WrongPhase);
        }
        let options = option_set(game, round, player_id)?;
        let chosen = u8::try_from(position)
            .ok()
            .and_then(|p| options.at(p).map(|o| (p, o.provenance)))
            .ok_or(GameError::InvalidOption)?;
        let at = self.clock.now();
        let mut events = Vec::new();
        if !ledger.options_served(round.round_id, player_id) {
            events.push(Event::OptionsServed {
                game_id,
                round_id: round.round_id,
                viewer_id: player_id,
                order: options.provenances(),
            });
        }
        let bet_event = Event::BetPlaced {
            game_id,
            round_id: round.round_id,
            player_id,
            position: chosen.0,
            choice: chosen.1,
        };

        // Preview the round with this bet to decide whether it completes.
        let mut preview = with_bet(round, player_id, chosen, at);
        events.push(bet_event);
        if preview.bets.len() == PLAYERS_PER_GAME {
            let score_events = score_round(&preview, at)?;
            preview.phase = Phase::Revealed;
            events.push(Event::RoundScored {
                game_id,
                round_id: round.round_id,
                score_events,
            });
            let others_revealed = ledger
                .rounds_of(game)
                .iter()
                .filter(|r| r.round_id != round.round_id)
                .all(|r| r.phase == Phase::Revealed);
            if others_revealed {
                events.push(Event::GameFinished { game_id });
            }
        }
        let round_id = round.round_id;
        self.commit(&mut ledger, at, events)?;
        Ok(ledger.round(round_id).cloned().expect("round exists"))
    }

    pub fn game_summary(&self, game_id: GameId) -> Result<GameSummary, GameError> {
        let ledger = self.ledger.read();
        let game = ledger
            .game(game_id)
            .ok_or(GameError::UnknownGame(game_id))?;
        Ok(summarize(game, ledger.rounds_of(game)))
    }

    /// Cancels every running game with a round past its phase deadline.
    /// Idempotent.
    pub fn cancel_stale(&self, now: DateTime<Utc>) -> Result<Vec<GameId>, GameError> {
        let mut ledger = self.ledger.write();
        let stale: Vec<GameId> = ledger
            .games()
            .filter(|g| g.status == GameStatus::InProgress)
            .filter(|g| {
                ledger.rounds_of(g).iter().any(|r| {
                    r.phase != Phase::Revealed && r.phase_deadline.is_some_and(|d| now > d)
                })
            })
            .map(|g| g.game_id)
            .collect();
        if stale.is_empty() {
            return Ok(stale);
        }
        let events = stale
            .iter()
            .map(|&game_id| Event::GameCancelled {
                game_id,
                reason: "phase deadline passed".into(),
            })
            .collect();
        self.commit(&mut ledger, now, events)?;
        Ok(stale)
    }

    pub fn player(&self, id: PlayerId) -> Result<Player, GameError> {
        self.read(|l| l.player(id).cloned())
            .ok_or(GameError::UnknownPlayer(id))
    }

    pub fn game(&self, id: GameId) -> Result<Game, GameError> {
        self.read(|l| l.game(id).cloned())
            .ok_or(GameError::UnknownGame(id))
    }

    pub fn rounds(&self, id: GameId) -> Result<Vec<Round>, GameError> {
        self.read(|l| {
            l.game(id)
                .map(|g| l.rounds_of(g).into_iter().cloned().collect())
        })
        .ok_or(GameError::UnknownGame(id))
    }

    /// Snapshot of the engine's own state; equivalent to replaying the log.
    pub fn snapshot(&self, filter: &SnapshotFilter) -> Snapshot {
        self.read(|l| Snapshot::from_ledger(l, filter))
    }
}

fn with_bet(
    round: &Round,
    player_id: PlayerId,
    (position, choice): (u8, Provenance),
    at: DateTime<Utc>,
) -> Round {
    let mut preview = round.clone();
    preview.bets.insert(
        player_id,
        Bet {
            player_id,
            choice,
            position,
            placed_at: at,
        },
    );
    preview
}

fn locate(
    ledger: &Ledger,
    game_id: GameId,
    round_index: usize,
    player_id: PlayerId,
) -> Result<(&Game, &Round), GameError> {
    let game = ledger
        .game(game_id)
        .ok_or(GameError::UnknownGame(game_id))?;
    if !game.is_member(player_id) {
        return Err(GameError::NotMember);
    }
    let round = game
        .round_ids
        .get(round_index)
        .and_then(|id| ledger.round(*id))
        .ok_or(GameError::UnknownRound(round_index))?;
    Ok((game, round))
}
