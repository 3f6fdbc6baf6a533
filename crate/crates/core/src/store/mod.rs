//! Durable storage: the gameplay event log, the article store and auth tokens.

mod file;
mod memory;

use chrono::{DateTime, Utc};
use sha2::{Digest, Sha256};

pub use file::{read_event_log, FileStore, ARTICLES_FILE, EVENTS_FILE, TOKENS_FILE};
pub use memory::MemoryStore;

use crate::error::StoreError;
use crate::event::{Event, EventRecord};
use crate::ids::PlayerId;
use crate::model::{Article, AuthToken, NewArticle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted(Article),
    /// An article with the same source URL already exists.
    Duplicate(Article),
}

/// Storage contract shared by the in-memory and file-backed stores.
pub trait Storage: Send + Sync {
    /// Appends a batch atomically and returns the records with their
    /// sequence numbers. The batch is durable when this returns.
    fn append_events(
        &self,
        batch: Vec<(DateTime<Utc>, Event)>,
    ) -> Result<Vec<EventRecord>, StoreError>;

    fn append_event(&self, at: DateTime<Utc>, event: Event) -> Result<EventRecord, StoreError> {
        let mut records = self.append_events(vec![(at, event)])?;
        Ok(records.remove(0))
    }

    /// Point-in-time copy of the whole log.
    fn events(&self) -> Result<Vec<EventRecord>, StoreError>;

    /// Atomic insert-if-absent keyed on `source_url`.
    fn insert_article_if_absent(&self, article: NewArticle) -> Result<InsertOutcome, StoreError>;

    fn articles(&self) -> Result<Vec<Article>, StoreError>;

    fn contains_source_url(&self, url: &str) -> Result<bool, StoreError> {
        Ok(self.articles()?.iter().any(|a| a.source_url == url))
    }

    fn store_token(&self, token: &AuthToken) -> Result<(), StoreError>;

    fn resolve_token(&self, token: &str) -> Result<PlayerId, StoreError>;

    fn revoke_token(&self, token: &str) -> Result<(), StoreError>;
}

/// Tokens are kept only as digests.
pub(crate) fn token_digest(token: &str) -> String {
    hex::encode(Sha256::digest(token.as_bytes()))
}
