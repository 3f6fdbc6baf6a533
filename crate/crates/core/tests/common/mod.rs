#![allow(dead_code)]

use std::sync::Arc;

use chrono::{DateTime, Duration, NaiveDate, TimeZone, Utc};
use fakeyou_core::clock::ManualClock;
use fakeyou_core::model::{Game, NewArticle, OptionSet, Provenance};
use fakeyou_core::store::{MemoryStore, Storage};
use fakeyou_core::{Engine, EngineConfig, PlayerId};

pub fn t0() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2020, 6, 1, 8, 0, 0).unwrap()
}

pub fn article(i: usize) -> NewArticle {
    NewArticle {
        headline: format!("Original Schlagzeile Nummer {i}"),
        image_ref: format!("img/{i}.png"),
        source_url: format!("https://news.example/{i}"),
        published_date: NaiveDate::from_ymd_opt(2020, 5, 1).unwrap(),
        language: "de".into(),
        source_name: "fixture".into(),
        ingested_at: t0(),
    }
}

pub struct Harness {
    pub engine: Engine,
    pub clock: Arc<ManualClock>,
    pub store: Arc<MemoryStore>,
}

pub fn harness(n_articles: usize, seed: u64) -> Harness {
    let store = Arc::new(MemoryStore::with_articles((0..n_articles).map(article)));
    harness_on(store, seed)
}

pub fn harness_on(store: Arc<MemoryStore>, seed: u64) -> Harness {
    let clock = Arc::new(ManualClock::stepping(t0(), Duration::seconds(1)));
    let engine = Engine::open(
        store.clone() as Arc<dyn Storage>,
        clock.clone(),
        EngineConfig {
            seed,
            ..EngineConfig::default()
        },
    )
    .unwrap();
    Harness {
        engine,
        clock,
        store,
    }
}

/// Registers three players, queues them and starts a game.
pub fn start_game(engine: &Engine, prefix: &str) -> Game {
    let ids: Vec<PlayerId> = ["a", "b", "c"]
        .iter()
        .map(|s| {
            engine
                .register_player(&format!("{prefix}-{s}"))
                .unwrap()
                .0
                .player_id
        })
        .collect();
    start_game_with(engine, &ids)
}

pub fn start_game_with(engine: &Engine, ids: &[PlayerId]) -> Game {
    for id in ids {
        engine.enqueue(*id).unwrap();
    }
    engine.matchmake().unwrap().expect("three queued players start a game")
}

pub fn submit_all(engine: &Engine, game: &Game, round: usize) {
    for p in game.player_ids {
        engine
            .submit_fake(game.game_id, round, p, &format!("Erfundene Meldung von {p} in Runde {round}"))
            .unwrap();
    }
}

/// Plays one round: everybody writes, then each bettor picks the option
/// `choose` returns.
pub fn play_round(
    engine: &Engine,
    game: &Game,
    round: usize,
    mut choose: impl FnMut(PlayerId, &OptionSet) -> Provenance,
) {
    submit_all(engine, game, round);
    for p in game.player_ids {
        let options = engine.get_options(game.game_id, round, p).unwrap();
        let pick = choose(p, &options);
        let position = options.position_of(pick).expect("choice is offered");
        engine
            .place_bet(game.game_id, round, p, position as usize)
            .unwrap();
    }
}
