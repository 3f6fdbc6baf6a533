use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

/// Content-addressed image directory. A stored image lives at
/// `<first two hex digits>/<sha256>.<ext>`; identical bytes map to the same
/// path, so storing twice is a no-op.
#[derive(Debug, Clone)]
pub struct ImageStore {
    root: PathBuf,
}

impl ImageStore {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        ImageStore { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Stores `bytes` and returns the relative path used as `image_ref`.
    pub fn put(&self, bytes: &[u8], extension: &str) -> std::io::Result<String> {
        let digest = hex::encode(Sha256::digest(bytes));
        let relative = format!("{}/{}.{}", &digest[..2], digest, extension);
        let target = self.root.join(&relative);
        if target.exists() {
            return Ok(relative);
        }
        let dir = target.parent().expect("relative path has a directory");
        std::fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&target).map_err(|e| e.error)?;
        Ok(relative)
    }

    pub fn contains(&self, image_ref: &str) -> bool {
        self.root.join(image_ref).is_file()
    }
}

/// Lower-case file extension of a URL or path, `bin` when there is none.
pub fn extension_of(location: &str) -> String {
    let path = location.split(['?', '#']).next().unwrap_or("");
    let name = path.rsplit('/').next().unwrap_or("");
    match name.rsplit_once('.') {
        Some((stem, ext))
            if !stem.is_empty() && (1..=5).contains(&ext.len()) && ext.chars().all(|c| c.is_ascii_alphanumeric()) =>
        {
            ext.to_ascii_lowercase()
        }
        _ => "bin".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_addressed() {
        let dir = tempfile::tempdir().unwrap();
        let store = ImageStore::new(dir.path());
        let a = store.put(b"bytes", "png").unwrap();
        let b = store.put(b"bytes", "png").unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(&a[3..5]));
        assert!(store.contains(&a));
        assert_ne!(store.put(b"other", "png").unwrap(), a);
        assert!(!store.contains("00/none.png"));
    }

    #[test]
    fn extensions() {
        assert_eq!(extension_of("https://x/a/bild.JPG?w=200"), "jpg");
        assert_eq!(extension_of("img/a.png"), "png");
        assert_eq!(extension_of("https://x/bild"), "bin");
        assert_eq!(extension_of("https://x.example/"), "bin");
        assert_eq!(extension_of(".hidden"), "bin");
    }
}
