//! Bot games driven straight through the engine.

use std::collections::BTreeSet;
use std::sync::Arc;

use chrono::{DateTime, Duration, TimeZone, Utc};
use fakeyou_core::clock::ManualClock;
use fakeyou_core::model::ROUNDS_PER_GAME;
use fakeyou_core::seed::rng_for;
use fakeyou_core::store::Storage;
use fakeyou_core::{Engine, EngineConfig, GameError, GameId, LoadError, PlayerId};
use rand::seq::index::sample;

use crate::bots::BotPolicy;
use crate::error::CliError;

pub const DEFAULT_PLAYERS: usize = 12;
/// Give up on a bot that keeps colliding with other fakes.
const MAX_ATTEMPTS: u64 = 100;

/// Logical start of every simulation; the clock steps one second per read.
pub fn epoch() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2020, 6, 1, 8, 0, 0).unwrap()
}

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub games: usize,
    pub seed: u64,
    /// Assigned to pool players round robin.
    pub policies: Vec<BotPolicy>,
    pub players: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            games: 10,
            seed: 0,
            policies: vec![BotPolicy::RandomBet],
            players: DEFAULT_PLAYERS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub games: Vec<GameId>,
    pub players: Vec<PlayerId>,
    pub last_seq: u64,
}

/// Engine on a deterministic clock, suitable for [`simulate`].
pub fn simulation_engine(storage: Arc<dyn Storage>, seed: u64) -> Result<Engine, LoadError> {
    let clock = Arc::new(ManualClock::stepping(epoch(), Duration::seconds(1)));
    Engine::open(storage, clock, EngineConfig { seed, ..EngineConfig::default() })
}

/// Plays `config.games` complete games between bots drawn from a fixed pool.
/// Each game's randomness depends only on the seed and the game id.
pub fn simulate(engine: &Engine, config: &SimulationConfig) -> Result<SimulationReport, CliError> {
    if config.policies.is_empty() {
        return Err(CliError::InvalidArgument("at least one bot policy is required".into()));
    }
    if config.players < 3 {
        return Err(CliError::InvalidArgument("a simulation needs at least 3 players".into()));
    }
    let available = engine.storage().articles()?.len();
    if available < ROUNDS_PER_GAME {
        return Err(GameError::InsufficientArticles { needed: ROUNDS_PER_GAME, available }.into());
    }
    if engine.read(|l| !l.queue().is_empty()) {
        return Err(CliError::InvalidArgument("players are already waiting in the queue".into()));
    }

    let mut pool = Vec::with_capacity(config.players);
    for i in 0..config.players {
        let alias = format!("bot-{:x}-{i:02}", config.seed);
        let (player, _token) = engine.register_player(&alias)?;
        pool.push((player.player_id, config.policies[i % config.policies.len()]));
    }

    let mut seating = rng_for(&[config.seed, 0x5ea7]);
    let mut games = Vec::with_capacity(config.games);
    for _ in 0..config.games {
        let seats: Vec<(PlayerId, BotPolicy)> = sample(&mut seating, pool.len(), 3)
            .into_iter()
            .map(|i| pool[i])
            .collect();
        for (p, _) in &seats {
            engine.enqueue(*p)?;
        }
        let game = engine.matchmake()?.expect("three players are queued");
        let seated: BTreeSet<PlayerId> = seats.iter().map(|s| s.0).collect();
        assert_eq!(seated, BTreeSet::from(game.player_ids), "queue was empty before enqueueing");
        play(engine, game.game_id, &seats, config.seed)?;
        games.push(game.game_id);
    }
    Ok(SimulationReport {
        games,
        players: pool.iter().map(|p| p.0).collect(),
        last_seq: engine.read(|l| l.last_seq()),
    })
}

fn play(engine: &Engine, game_id: GameId, seats: &[(PlayerId, BotPolicy)], seed: u64) -> Result<(), CliError> {
    for round in 0..ROUNDS_PER_GAME {
        let truth = engine.rounds(game_id)?[round].truth.clone();
        for (p, policy) in seats {
            let mut attempt = 0;
            loop {
                let mut rng = rng_for(&[seed, game_id.0, round as u64, p.0, attempt]);
                match engine.submit_fake(game_id, round, *p, &policy.write_fake(&truth, &mut rng)) {
                    Ok(_) => break,
                    Err(GameError::DuplicateFake | GameError::MatchesTruth) if attempt < MAX_ATTEMPTS => attempt += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
        for (p, policy) in seats {
            let options = engine.get_options(game_id, round, *p)?;
            let mut rng = rng_for(&[seed, game_id.0, round as u64, p.0, u64::MAX]);
            engine.place_bet(game_id, round, *p, policy.choose(&options, &mut rng))?;
        }
    }
    Ok(())
}
