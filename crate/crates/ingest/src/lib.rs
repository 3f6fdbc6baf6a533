//! Content acquisition: turns news sources (offline fixtures or live HTML
//! pages with declarative selector rules) into stored articles with locally
//! stored images.

pub mod config;
pub mod extract;
pub mod fetch;
pub mod fixture;
pub mod images;
pub mod pipeline;

mod error;

pub use config::{IngestConfig, Mode, Rules, SourceConfig};
pub use error::{ConfigError, ExtractError, FetchError, FixtureError, IngestError};
pub use fetch::{Fetcher, StdFetcher};
pub use images::ImageStore;
pub use pipeline::{ingest, Failure, IngestReport};
