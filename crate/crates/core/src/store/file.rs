use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use parking_lot::{Mutex, RwLock};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{token_digest, InsertOutcome, Storage};
use crate::error::StoreError;
use crate::event::{Event, EventRecord};
use crate::ids::{ArticleId, PlayerId};
use crate::model::{Article, AuthToken, NewArticle};

pub const EVENTS_FILE: &str = "events.jsonl";
pub const ARTICLES_FILE: &str = "articles.jsonl";
pub const TOKENS_FILE: &str = "tokens.jsonl";

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum TokenLine {
    Issue {
        digest: String,
        player_id: PlayerId,
        issued_at: DateTime<Utc>,
    },
    Revoke {
        digest: String,
    },
}

/// Embedded store: three line-delimited JSON files in one directory.
///
/// Every append is fsynced before returning. A trailing line without a
/// newline (torn write) is dropped on open. Article inserts take an advisory
/// file lock so separate ingest processes can share a data directory.
#[derive(Debug)]
pub struct FileStore {
    root: PathBuf,
    events: RwLock<Vec<EventRecord>>,
    event_file: Mutex<File>,
    article_guard: Mutex<()>,
    tokens: Mutex<(HashMap<String, PlayerId>, File)>,
}

impl FileStore {
    pub fn open(root: impl AsRef<Path>) -> Result<Self, StoreError> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root)?;

        let events_path = root.join(EVENTS_FILE);
        let events: Vec<EventRecord> = load_lines(&events_path)?;
        check_sequence(&events, EVENTS_FILE)?;
        let event_file = append_handle(&events_path)?;

        let tokens_path = root.join(TOKENS_FILE);
        let mut tokens = HashMap::new();
        for line in load_lines::<TokenLine>(&tokens_path)? {
            match line {
                TokenLine::Issue {
                    digest, player_id, ..
                } => {
                    tokens.insert(digest, player_id);
                }
                TokenLine::Revoke { digest } => {
                    tokens.remove(&digest);
                }
            }
        }
        let token_file = append_handle(&tokens_path)?;

        Ok(FileStore {
            root,
            events: RwLock::new(events),
            event_file: Mutex::new(event_file),
            article_guard: Mutex::new(()),
            tokens: Mutex::new((tokens, token_file)),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn events_path(&self) -> PathBuf {
        self.root.join(EVENTS_FILE)
    }

    fn articles_path(&self) -> PathBuf {
        self.root.join(ARTICLES_FILE)
    }
}

fn append_handle(path: &Path) -> Result<File, StoreError> {
    Ok(OpenOptions::new().create(true).append(true).open(path)?)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Reads an event log file without opening a store. Nothing is written: a
/// torn final line is skipped rather than truncated.
pub fn read_event_log(path: &Path) -> Result<Vec<EventRecord>, StoreError> {
    let text = fs::read_to_string(path)?;
    let file = file_name(path);
    let (events, _) = parse_lines::<EventRecord>(&text, &file)?;
    check_sequence(&events, &file)?;
    Ok(events)
}

fn check_sequence(events: &[EventRecord], file: &str) -> Result<(), StoreError> {
    for pair in events.windows(2) {
        if pair[1].seq <= pair[0].seq {
            return Err(StoreError::Corrupt {
                file: file.into(),
                line: 0,
                message: format!("sequence {} does not increase", pair[1].seq),
            });
        }
    }
    Ok(())
}

fn load_lines<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, StoreError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let (items, torn_at) = parse_lines(&text, &file_name(path))?;
    if let Some(offset) = torn_at {
        OpenOptions::new()
            .write(true)
            .open(path)?
            .set_len(offset as u64)?;
    }
    Ok(items)
}

/// Returns parsed items and, if the last line is an unterminated partial
/// record, the byte offset where it starts.
fn parse_lines<T: DeserializeOwned>(
    text: &str,
    file: &str,
) -> Result<(Vec<T>, Option<usize>), StoreError> {
    let mut items = Vec::new();
    let mut offset = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        let start = offset;
        offset += line.len();
        let terminated = line.ends_with('\n');
        let body = line.trim_end_matches(['\n', '\r']);
        if body.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(body) {
            Ok(item) => items.push(item),
            Err(_) if !terminated => return Ok((items, Some(start))),
            Err(e) => {
                return Err(StoreError::Corrupt {
                    file: file.into(),
                    line: i + 1,
                    message: e.to_string(),
                })
            }
        }
    }
    Ok((items, None))
}

fn write_line<T: Serialize>(file: &mut File, item: &T) -> Result<(), StoreError> {
    let mut line = serde_json::to_vec(item)?;
    line.push(b'\n');
    file.write_all(&line)?;
    file.sync_data()?;
    Ok(())
}

impl Storage for FileStore {
    fn append_events(
        &self,
        batch: Vec<(DateTime<Utc>, Event)>,
    ) -> Result<Vec<EventRecord>, StoreError> {
        let mut file = self.event_file.lock();
        let mut seq = self.events.read().last().map_or(0, |r| r.seq);
        let records: Vec<EventRecord> = batch
            .into_iter()
            .map(|(at, event)| {
                seq += 1;
                EventRecord { seq, at, event }
            })
            .collect();
        let mut buf = Vec::new();
        for record in &records {
            serde_json::to_writer(&mut buf, record)?;
            buf.push(b'\n');
        }
        file.write_all(&buf)?;
        file.sync_data()?;
        self.events.write().extend(records.iter().cloned());
        Ok(records)
    }

    fn events(&self) -> Result<Vec<EventRecord>, StoreError> {
        Ok(self.events.read().clone())
    }

    fn insert_article_if_absent(&self, article: NewArticle) -> Result<InsertOutcome, StoreError> {
        let _guard = self.article_guard.lock();
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(self.articles_path())?;
        file.lock()?;
        let mut text = String::new();
        file.seek(SeekFrom::Start(0))?;
        file.read_to_string(&mut text)?;
        let (existing, torn_at): (Vec<Article>, _) = parse_lines(&text, ARTICLES_FILE)?;
        if let Some(offset) = torn_at {
            file.set_len(offset as u64)?;
        }
        if let Some(found) = existing.iter().find(|a| a.source_url == article.source_url) {
            return Ok(InsertOutcome::Duplicate(found.clone()));
        }
        let next = existing.iter().map(|a| a.article_id.0).max().unwrap_or(0) + 1;
        let stored = article.into_article(ArticleId(next));
        write_line(&mut file, &stored)?;
        file.unlock()?;
        Ok(InsertOutcome::Inserted(stored))
    }

    fn articles(&self) -> Result<Vec<Article>, StoreError> {
        let path = self.articles_path();
        let mut file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        file.lock_shared()?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        file.unlock()?;
        Ok(parse_lines(&text, ARTICLES_FILE)?.0)
    }

    fn store_token(&self, token: &AuthToken) -> Result<(), StoreError> {
        let digest = token_digest(&token.token);
        let mut guard = self.tokens.lock();
        let (map, file) = &mut *guard;
        write_line(
            file,
            &TokenLine::Issue {
                digest: digest.clone(),
                player_id: token.player_id,
                issued_at: token.issued_at,
            },
        )?;
        map.insert(digest, token.player_id);
        Ok(())
    }

    fn resolve_token(&self, token: &str) -> Result<PlayerId, StoreError> {
        self.tokens
            .lock()
            .0
            .get(&token_digest(token))
            .copied()
            .ok_or(StoreError::Unauthorized)
    }

    fn revoke_token(&self, token: &str) -> Result<(), StoreError> {
        let digest = token_digest(token);
        let mut guard = self.tokens.lock();
        let (map, file) = &mut *guard;
        if map.remove(&digest).is_some() {
            write_line(file, &TokenLine::Revoke { digest })?;
        }
        Ok(())
    }
}
