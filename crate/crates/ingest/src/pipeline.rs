use std::collections::BTreeSet;

use chrono::{DateTime, Utc};
use fakeyou_core::model::NewArticle;
use fakeyou_core::store::{InsertOutcome, Storage};
use scraper::Html;

use crate::config::{Mode, SourceConfig};
use crate::error::IngestError;
use crate::extract::{extract_article, parse_date, Rule, UNKNOWN_LANGUAGE};
use crate::fetch::{resolve_reference, Fetcher};
use crate::fixture::load_fixture;
use crate::images::{extension_of, ImageStore};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Source URL of the item, or its position when it has none.
    pub item: String,
    pub reason: String,
}

/// Outcome of one run. `fetched = new_articles + duplicates_skipped +
/// failures.len()` always holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub source_name: String,
    pub fetched: usize,
    pub new_articles: usize,
    pub duplicates_skipped: usize,
    pub failures: Vec<Failure>,
    /// Stored items whose publication date fell back to the ingest date.
    pub date_fallbacks: usize,
}

impl IngestReport {
    pub fn is_consistent(&self) -> bool {
        self.fetched == self.new_articles + self.duplicates_skipped + self.failures.len()
    }
}

/// One candidate article before dedupe and image retrieval.
struct Candidate {
    source_url: String,
    headline: String,
    image: String,
    date: Option<String>,
    language: Option<String>,
}

/// Runs one pass over `source`: collects candidates, skips URLs already
/// stored, copies each new image into `images`, then inserts the article.
/// Item-level problems are recorded as failures; only an unreachable source
/// or a storage error aborts the run.
pub fn ingest(
    source: &SourceConfig,
    storage: &dyn Storage,
    images: &ImageStore,
    fetcher: &dyn Fetcher,
    now: DateTime<Utc>,
) -> Result<IngestReport, IngestError> {
    source.validate()?;
    let mut report = IngestReport {
        source_name: source.name.clone(),
        ..IngestReport::default()
    };
    let candidates = match source.mode {
        Mode::Fixture => fixture_candidates(source)?,
        Mode::LiveHtml => live_candidates(source, fetcher, now, &mut report)?,
    };
    let today = now.date_naive();
    for candidate in candidates {
        report.fetched += 1;
        if storage.contains_source_url(&candidate.source_url)? {
            report.duplicates_skipped += 1;
            continue;
        }
        if candidate.headline.trim().is_empty() {
            report.failures.push(failure(&candidate.source_url, "headline not found"));
            continue;
        }
        let bytes = match fetcher.fetch(&candidate.image) {
            Ok(bytes) if !bytes.is_empty() => bytes,
            Ok(_) => {
                report.failures.push(failure(&candidate.source_url, "image is empty"));
                continue;
            }
            Err(e) => {
                report.failures.push(failure(&candidate.source_url, &format!("image not retrievable: {e}")));
                continue;
            }
        };
        let image_ref = match images.put(&bytes, &extension_of(&candidate.image)) {
            Ok(path) => path,
            Err(e) => {
                report.failures.push(failure(&candidate.source_url, &format!("image not stored: {e}")));
                continue;
            }
        };
        let published = candidate.date.as_deref().and_then(parse_date);
        let article = NewArticle {
            headline: candidate.headline.split_whitespace().collect::<Vec<_>>().join(" "),
            image_ref,
            source_url: candidate.source_url,
            published_date: published.unwrap_or(today),
            language: candidate
                .language
                .filter(|l| !l.trim().is_empty())
                .unwrap_or_else(|| UNKNOWN_LANGUAGE.into()),
            source_name: source.name.clone(),
            ingested_at: now,
        };
        match storage.insert_article_if_absent(article)? {
            InsertOutcome::Inserted(_) => {
                report.new_articles += 1;
                if published.is_none() {
                    report.date_fallbacks += 1;
                }
            }
            // another run stored it between the check and the insert
            InsertOutcome::Duplicate(_) => report.duplicates_skipped += 1,
        }
    }
    Ok(report)
}

fn failure(item: &str, reason: &str) -> Failure {
    Failure {
        item: item.to_string(),
        reason: reason.to_string(),
    }
}

fn fixture_candidates(source: &SourceConfig) -> Result<Vec<Candidate>, IngestError> {
    let path = source.fixture_path.as_deref().expect("validated");
    let base = path.parent().map(|p| p.to_string_lossy().into_owned());
    let items = load_fixture(path)?;
    Ok(items
        .into_iter()
        .map(|item| Candidate {
            image: match (&base, url::Url::parse(&item.image)) {
                (_, Ok(_)) => item.image,
                (Some(base), Err(_)) if std::path::Path::new(&item.image).is_relative() => {
                    std::path::Path::new(base).join(&item.image).to_string_lossy().into_owned()
                }
                _ => item.image,
            },
            source_url: item.url,
            headline: item.headline,
            date: item.date,
            language: item.language,
        })
        .collect())
}

fn live_candidates(
    source: &SourceConfig,
    fetcher: &dyn Fetcher,
    now: DateTime<Utc>,
    report: &mut IngestReport,
) -> Result<Vec<Candidate>, IngestError> {
    let list_url = source.list_url.as_deref().expect("validated");
    let unreachable = |message: String| IngestError::SourceUnreachable {
        source_name: source.name.clone(),
        message,
    };
    let list_page = fetcher
        .fetch_text(list_url)
        .map_err(|e| unreachable(e.to_string()))?;

    let pages: Vec<(String, Option<String>)> = match &source.rules.article_link {
        None => vec![(list_url.to_string(), Some(list_page))],
        Some(link) => {
            let rule = Rule::parse(link).map_err(|e| unreachable(e.to_string()))?;
            let doc = Html::parse_document(&list_page);
            let mut seen = BTreeSet::new();
            rule.all(&doc)
                .into_iter()
                .map(|href| resolve_reference(Some(list_url), &href))
                .filter(|url| seen.insert(url.clone()))
                .map(|url| (url, None))
                .collect()
        }
    };

    let mut candidates = Vec::new();
    for (url, body) in pages {
        let body = match body {
            Some(body) => body,
            None => match fetcher.fetch_text(&url) {
                Ok(body) => body,
                Err(e) => {
                    report.fetched += 1;
                    report.failures.push(failure(&url, &format!("page not retrievable: {e}")));
                    continue;
                }
            },
        };
        match extract_article(&body, &source.rules, now.date_naive()) {
            Ok(found) => candidates.push(Candidate {
                image: resolve_reference(Some(&url), &found.image_url),
                headline: found.headline,
                date: (!found.date_fallback).then(|| found.date.to_string()),
                language: Some(found.language),
                source_url: url,
            }),
            Err(e) => {
                report.fetched += 1;
                report.failures.push(failure(&url, &e.to_string()));
            }
        }
    }
    Ok(candidates)
}
