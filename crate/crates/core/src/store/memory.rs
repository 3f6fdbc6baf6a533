use std::collections::HashMap;

use chrono::{DateTime, Utc};
use parking_lot::{Mutex, RwLock};

use super::{token_digest, InsertOutcome, Storage};
use crate::error::StoreError;
use crate::event::{Event, EventRecord};
use crate::ids::{ArticleId, PlayerId};
use crate::model::{Article, AuthToken, NewArticle};

/// Volatile store for tests and simulations.
#[derive(Debug, Default)]
pub struct MemoryStore {
    events: RwLock<Vec<EventRecord>>,
    articles: Mutex<Vec<Article>>,
    tokens: Mutex<HashMap<String, PlayerId>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_articles(articles: impl IntoIterator<Item = NewArticle>) -> Self {
        let store = Self::new();
        for article in articles {
            store
                .insert_article_if_absent(article)
                .expect("in-memory insert cannot fail");
        }
        store
    }
}

impl Storage for MemoryStore {
    fn append_events(
        &self,
        batch: Vec<(DateTime<Utc>, Event)>,
    ) -> Result<Vec<EventRecord>, StoreError> {
        let mut events = self.events.write();
        let mut seq = events.last().map_or(0, |r| r.seq);
        let records: Vec<EventRecord> = batch
            .into_iter()
            .map(|(at, event)| {
                seq += 1;
                EventRecord { seq, at, event }
            })
            .collect();
        events.extend(records.iter().cloned());
        Ok(records)
    }

    fn events(&self) -> Result<Vec<EventRecord>, StoreError> {
        Ok(self.events.read().clone())
    }

    fn insert_article_if_absent(&self, article: NewArticle) -> Result<InsertOutcome, StoreError> {
        let mut articles = self.articles.lock();
        if let Some(existing) = articles.iter().find(|a| a.source_url == article.source_url) {
            return Ok(InsertOutcome::Duplicate(existing.clone()));
        }
        let id = ArticleId(articles.len() as u64 + 1);
        let stored = article.into_article(id);
        articles.push(stored.clone());
        Ok(InsertOutcome::Inserted(stored))
    }

    fn articles(&self) -> Result<Vec<Article>, StoreError> {
        Ok(self.articles.lock().clone())
    }

    fn store_token(&self, token: &AuthToken) -> Result<(), StoreError> {
        self.tokens
            .lock()
            .insert(token_digest(&token.token), token.player_id);
        Ok(())
    }

    fn resolve_token(&self, token: &str) -> Result<PlayerId, StoreError> {
        self.tokens
            .lock()
            .get(&token_digest(token))
            .copied()
            .ok_or(StoreError::Unauthorized)
    }

    fn revoke_token(&self, token: &str) -> Result<(), StoreError> {
        self.tokens.lock().remove(&token_digest(token));
        Ok(())
    }
}
