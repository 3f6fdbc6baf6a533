#![allow(dead_code)]

use std::sync::Arc;

use chrono::{Duration, NaiveDate, TimeZone, Utc};
use fakeyou_core::clock::ManualClock;
use fakeyou_core::model::{Game, NewArticle, OptionSet, Provenance};
use fakeyou_core::store::{MemoryStore, Storage};
use fakeyou_core::{Engine, EngineConfig, PlayerId};

pub fn article(i: usize) -> NewArticle {
    NewArticle {
        headline: format!("Stadtrat beschließt Haushalt {i}"),
        image_ref: format!("img/{i}.png"),
        source_url: format!("https://news.example/{i}"),
        published_date: NaiveDate::from_ymd_opt(2020, 5, 1).unwrap(),
        language: "de".into(),
        source_name: "fixture".into(),
        ingested_at: Utc.with_ymd_and_hms(2020, 6, 1, 0, 0, 0).unwrap(),
    }
}

pub fn engine(n_articles: usize) -> (Engine, Arc<ManualClock>) {
    let clock = Arc::new(ManualClock::stepping(
        Utc.with_ymd_and_hms(2020, 6, 1, 8, 0, 0).unwrap(),
        Duration::seconds(1),
    ));
    let store: Arc<dyn Storage> = Arc::new(MemoryStore::with_articles((0..n_articles).map(article)));
    let engine = Engine::open(store, clock.clone(), EngineConfig::default()).unwrap();
    (engine, clock)
}

pub fn register(engine: &Engine, aliases: &[&str]) -> Vec<PlayerId> {
    aliases
        .iter()
        .map(|a| engine.register_player(a).unwrap().0.player_id)
        .collect()
}

pub fn start(engine: &Engine, seats: &[PlayerId]) -> Game {
    for p in seats {
        engine.enqueue(*p).unwrap();
    }
    engine.matchmake().unwrap().unwrap()
}

/// Plays `rounds` rounds of `game`. `fake` writes each player's headline.
pub fn play(
    engine: &Engine,
    game: &Game,
    rounds: usize,
    mut fake: impl FnMut(PlayerId, usize) -> String,
    mut choose: impl FnMut(PlayerId, &OptionSet) -> Provenance,
) {
    for idx in 0..rounds {
        for p in game.player_ids {
            engine.submit_fake(game.game_id, idx, p, &fake(p, idx)).unwrap();
        }
        for p in game.player_ids {
            let options = engine.get_options(game.game_id, idx, p).unwrap();
            let pos = options.position_of(choose(p, &options)).unwrap();
            engine.place_bet(game.game_id, idx, p, pos as usize).unwrap();
        }
    }
}

pub fn plain_fake(p: PlayerId, idx: usize) -> String {
    format!("Spieler {p} erfindet Meldung {idx}")
}
