use std::path::Path;

use serde::Deserialize;

use crate::error::FixtureError;

/// One line of a fixture file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct FixtureItem {
    pub headline: String,
    /// Path (relative to the fixture file), `file://` or `http(s)://` URL.
    pub image: String,
    pub url: String,
    #[serde(default)]
    pub date: Option<String>,
    #[serde(default)]
    pub language: Option<String>,
}

/// Reads line-delimited JSON items in file order. Blank lines are skipped.
pub fn load_fixture(path: &Path) -> Result<Vec<FixtureItem>, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_fixture(&text)
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureItem>, FixtureError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| FixtureError::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{"headline":"A","image":"a.png","url":"https://x/1","date":"2020-05-01","language":"de"}"#;

    #[test]
    fn empty_and_ordered() {
        assert!(parse_fixture("").unwrap().is_empty());
        let text = format!("{LINE}\n\n{}\n{}\n", LINE.replace("\"A\"", "\"B\""), LINE.replace("\"A\"", "\"C\""));
        let items = parse_fixture(&text).unwrap();
        let heads: Vec<&str> = items.iter().map(|i| i.headline.as_str()).collect();
        assert_eq!(heads, ["A", "B", "C"]);
    }

    #[test]
    fn malformed_line_reports_number() {
        let text = format!("{LINE}\n{{\"headline\": 1}}\n{LINE}\n");
        match parse_fixture(&text) {
            Err(FixtureError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn optional_fields() {
        let items = parse_fixture(r#"{"headline":"A","image":"a.png","url":"u"}"#).unwrap();
        assert_eq!(items[0].date, None);
        assert_eq!(items[0].language, None);
    }
}
