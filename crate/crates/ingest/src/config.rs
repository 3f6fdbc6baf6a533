use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use crate::error::ConfigError;
use crate::extract::Rule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Fixture,
    LiveHtml,
}

/// Selector rules: a CSS selector, optionally followed by `@attr` to read an
/// attribute instead of the element text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rules {
    /// Links to article pages on the list page. Without it the list page is
    /// itself treated as one article.
    pub article_link: Option<String>,
    pub headline: Option<String>,
    pub image: Option<String>,
    pub date: Option<String>,
    pub language: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    pub name: String,
    pub mode: Mode,
    pub fixture_path: Option<PathBuf>,
    pub list_url: Option<String>,
    #[serde(default)]
    pub rules: Rules,
    #[serde(default = "default_poll")]
    pub poll_interval_secs: u64,
}

fn default_poll() -> u64 {
    3600
}

impl SourceConfig {
    pub fn poll_interval(&self) -> Duration {
        Duration::from_secs(self.poll_interval_secs)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |message: &str| ConfigError::Invalid {
            source_name: self.name.clone(),
            message: message.into(),
        };
        if self.name.trim().is_empty() {
            return Err(invalid("name must not be empty"));
        }
        match self.mode {
            Mode::Fixture => {
                if self.fixture_path.is_none() {
                    return Err(invalid("fixture mode requires fixture_path"));
                }
            }
            Mode::LiveHtml => {
                let list_url = self
                    .list_url
                    .as_deref()
                    .ok_or_else(|| invalid("live_html mode requires list_url"))?;
                url::Url::parse(list_url).map_err(|e| invalid(&format!("list_url: {e}")))?;
                let r = &self.rules;
                let required = [
                    ("headline", &r.headline),
                    ("image", &r.image),
                    ("date", &r.date),
                    ("language", &r.language),
                ];
                for (name, rule) in required {
                    let rule = rule
                        .as_deref()
                        .ok_or_else(|| invalid(&format!("live_html mode requires rules.{name}")))?;
                    Rule::parse(rule).map_err(|e| invalid(&format!("rules.{name}: {e}")))?;
                }
                if let Some(link) = &r.article_link {
                    Rule::parse(link).map_err(|e| invalid(&format!("rules.article_link: {e}")))?;
                }
            }
        }
        if self.poll_interval_secs == 0 {
            return Err(invalid("poll_interval_secs must be positive"));
        }
        Ok(())
    }
}

/// A config file: `[[source]]` tables. Relative fixture paths, and list
/// URLs that are plain relative paths, resolve against the file's directory.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngestConfig {
    #[serde(rename = "source", default)]
    pub sources: Vec<SourceConfig>,
}

impl IngestConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config: IngestConfig = toml::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        for source in &mut config.sources {
            if let Some(p) = &source.fixture_path {
                if p.is_relative() {
                    source.fixture_path = Some(base.join(p));
                }
            }
            if let Some(list) = &source.list_url {
                if url::Url::parse(list).is_err() && Path::new(list).is_relative() {
                    let local = std::path::absolute(base.join(list)).ok();
                    if let Some(u) = local.and_then(|p| url::Url::from_file_path(p).ok()) {
                        source.list_url = Some(u.to_string());
                    }
                }
            }
        }
        config.validate(path)?;
        Ok(config)
    }

    fn validate(&self, path: &Path) -> Result<(), ConfigError> {
        if self.sources.is_empty() {
            return Err(ConfigError::Parse {
                path: path.to_path_buf(),
                message: "no [[source]] entries".into(),
            });
        }
        self.sources.iter().try_for_each(SourceConfig::validate)
    }
}
