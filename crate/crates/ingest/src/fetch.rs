use std::path::{Path, PathBuf};

use url::Url;

use crate::error::FetchError;

/// Retrieves raw bytes for a location string.
pub trait Fetcher: Send + Sync {
    fn fetch(&self, location: &str) -> Result<Vec<u8>, FetchError>;

    fn fetch_text(&self, location: &str) -> Result<String, FetchError> {
        let bytes = self.fetch(location)?;
        String::from_utf8(bytes).map_err(|e| FetchError::Failed {
            location: location.into(),
            message: e.to_string(),
        })
    }
}

/// Handles `http(s)://` via a blocking client, `file://` URLs, and plain
/// paths (relative ones against `base_dir`).
#[derive(Debug, Clone, Default)]
pub struct StdFetcher {
    pub base_dir: Option<PathBuf>,
}

impl StdFetcher {
    pub fn new(base_dir: Option<PathBuf>) -> Self {
        StdFetcher { base_dir }
    }

    fn resolve(&self, path: &Path) -> PathBuf {
        match &self.base_dir {
            Some(base) if path.is_relative() => base.join(path),
            _ => path.to_path_buf(),
        }
    }
}

impl Fetcher for StdFetcher {
    fn fetch(&self, location: &str) -> Result<Vec<u8>, FetchError> {
        let failed = |message: String| FetchError::Failed {
            location: location.into(),
            message,
        };
        match Url::parse(location) {
            Ok(url) if matches!(url.scheme(), "http" | "https") => ureq::get(location)
                .call()
                .map_err(|e| failed(e.to_string()))?
                .body_mut()
                .read_to_vec()
                .map_err(|e| failed(e.to_string())),
            Ok(url) if url.scheme() == "file" => {
                let path = url
                    .to_file_path()
                    .map_err(|_| failed("not a local file URL".into()))?;
                std::fs::read(path).map_err(|e| failed(e.to_string()))
            }
            // single-letter schemes are Windows drive letters
            Ok(url) if url.scheme().len() > 1 => Err(failed(format!("unsupported scheme {}", url.scheme()))),
            _ => std::fs::read(self.resolve(Path::new(location))).map_err(|e| failed(e.to_string())),
        }
    }
}

/// Resolves `reference` against `base` when it is relative; absolute URLs
/// and plain paths pass through.
pub fn resolve_reference(base: Option<&str>, reference: &str) -> String {
    if Url::parse(reference).is_ok() {
        return reference.to_string();
    }
    base.and_then(|b| Url::parse(b).ok())
        .and_then(|b| b.join(reference).ok())
        .map(|u| u.to_string())
        .unwrap_or_else(|| reference.to_string())
}
