//! Core of the FakeYou headline game: three players each write a fake
//! headline for a news image, then try to pick the original among their two
//! opponents' fakes.
//!
//! State is event-sourced. [`engine::Engine`] validates commands and appends
//! [`event::EventRecord`]s to a [`store::Storage`]; the same records replay
//! into a [`state::Ledger`] and feed [`snapshot::Snapshot`]s for analytics.

pub mod clock;
pub mod engine;
pub mod error;
pub mod event;
pub mod ids;
pub mod matchmaking;
pub mod model;
pub mod options;
pub mod scoring;
pub mod seed;
pub mod snapshot;
pub mod state;
pub mod store;
pub mod text;

pub use engine::{Engine, EngineConfig};
pub use error::{GameError, LoadError, StoreError};
pub use ids::{ArticleId, GameId, PlayerId, RoundId};
