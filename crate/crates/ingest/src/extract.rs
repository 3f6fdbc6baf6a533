use chrono::{DateTime, NaiveDate, NaiveDateTime};
use scraper::{ElementRef, Html, Selector};

use crate::config::Rules;
use crate::error::ExtractError;

/// Language tag used when the page does not declare one.
pub const UNKNOWN_LANGUAGE: &str = "und";

/// `selector` or `selector@attribute`.
#[derive(Debug, Clone)]
pub struct Rule {
    selector: Selector,
    attr: Option<String>,
}

impl Rule {
    pub fn parse(rule: &str) -> Result<Rule, ExtractError> {
        let bad = || ExtractError::BadRule(rule.to_string());
        let (css, attr) = match rule.rsplit_once('@') {
            Some((css, attr))
                if !attr.is_empty()
                    && attr
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':')) =>
            {
                (css, Some(attr.to_string()))
            }
            _ => (rule, None),
        };
        if css.trim().is_empty() {
            return Err(bad());
        }
        let selector = Selector::parse(css).map_err(|_| bad())?;
        Ok(Rule { selector, attr })
    }

    fn value(&self, element: ElementRef<'_>) -> Option<String> {
        let raw = match &self.attr {
            Some(attr) => element.value().attr(attr)?.to_string(),
            None => element.text().collect::<String>(),
        };
        let cleaned = raw.split_whitespace().collect::<Vec<_>>().join(" ");
        (!cleaned.is_empty()).then_some(cleaned)
    }

    /// First matching element with a non-empty value.
    pub fn first(&self, doc: &Html) -> Option<String> {
        doc.select(&self.selector).find_map(|e| self.value(e))
    }

    /// All non-empty values in document order.
    pub fn all(&self, doc: &Html) -> Vec<String> {
        doc.select(&self.selector).filter_map(|e| self.value(e)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extracted {
    pub headline: String,
    /// As written in the page; may be relative.
    pub image_url: String,
    pub date: NaiveDate,
    /// True when the page had no usable date and `today` was used.
    pub date_fallback: bool,
    pub language: String,
}

/// Applies the rules to one article page. The first match wins for every
/// field.
pub fn extract_article(
    document: &str,
    rules: &Rules,
    today: NaiveDate,
) -> Result<Extracted, ExtractError> {
    let doc = Html::parse_document(document);
    let apply = |rule: &Option<String>| -> Result<Option<String>, ExtractError> {
        match rule {
            Some(rule) => Ok(Rule::parse(rule)?.first(&doc)),
            None => Ok(None),
        }
    };
    let headline = apply(&rules.headline)?.ok_or(ExtractError::HeadlineNotFound)?;
    let image_url = apply(&rules.image)?.ok_or(ExtractError::ImageNotFound)?;
    let (date, date_fallback) = match apply(&rules.date)?.as_deref().and_then(parse_date) {
        Some(d) => (d, false),
        None => (today, true),
    };
    let language = apply(&rules.language)?.unwrap_or_else(|| UNKNOWN_LANGUAGE.to_string());
    Ok(Extracted {
        headline,
        image_url,
        date,
        date_fallback,
        language,
    })
}

/// Accepts `YYYY-MM-DD`, RFC 3339 and `YYYY-MM-DDTHH:MM:SS`.
pub fn parse_date(text: &str) -> Option<NaiveDate> {
    let text = text.trim();
    NaiveDate::parse_from_str(text, "%Y-%m-%d")
        .ok()
        .or_else(|| DateTime::parse_from_rfc3339(text).ok().map(|d| d.date_naive()))
        .or_else(|| {
            NaiveDateTime::parse_from_str(text, "%Y-%m-%dT%H:%M:%S")
                .ok()
                .map(|d| d.date())
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules() -> Rules {
        Rules {
            article_link: None,
            headline: Some("article h1".into()),
            image: Some("article img@src".into()),
            date: Some("time@datetime".into()),
            language: Some("html@lang".into()),
        }
    }

    fn today() -> NaiveDate {
        NaiveDate::from_ymd_opt(2021, 1, 2).unwrap()
    }

    #[test]
    fn extracts_all_fields() {
        let page = r#"<html lang="de"><body><article>
            <h1>  Testüberschrift
            </h1><img src="/bilder/test.jpg"><time datetime="2020-05-03T10:15:00+02:00">3. Mai</time>
            </article></body></html>"#;
        let got = extract_article(page, &rules(), today()).unwrap();
        assert_eq!(got.headline, "Testüberschrift");
        assert_eq!(got.image_url, "/bilder/test.jpg");
        assert_eq!(got.date, NaiveDate::from_ymd_opt(2020, 5, 3).unwrap());
        assert!(!got.date_fallback);
        assert_eq!(got.language, "de");
    }

    #[test]
    fn first_match_wins() {
        let page = r#"<article><h1>Erste</h1><h1>Zweite</h1>
            <img src="a.png"><img src="b.png"></article>"#;
        let got = extract_article(page, &rules(), today()).unwrap();
        assert_eq!(got.headline, "Erste");
        assert_eq!(got.image_url, "a.png");
        assert!(got.date_fallback);
        assert_eq!(got.date, today());
        assert_eq!(got.language, UNKNOWN_LANGUAGE);
    }

    #[test]
    fn missing_parts() {
        let page = "<article><h1>Nur Text</h1></article>";
        assert_eq!(extract_article(page, &rules(), today()), Err(ExtractError::ImageNotFound));
        let page = "<article><img src=a.png></article>";
        assert_eq!(extract_article(page, &rules(), today()), Err(ExtractError::HeadlineNotFound));
        let page = "<article><h1>   </h1><img src=a.png></article>";
        assert_eq!(extract_article(page, &rules(), today()), Err(ExtractError::HeadlineNotFound));
    }

    #[test]
    fn rule_syntax() {
        assert!(Rule::parse("a.teaser@href").unwrap().attr.is_some());
        assert!(Rule::parse("h1").unwrap().attr.is_none());
        assert!(Rule::parse("@href").is_err());
        assert!(Rule::parse("h1[").is_err());
    }

    #[test]
    fn dates() {
        let d = NaiveDate::from_ymd_opt(2020, 5, 1).unwrap();
        assert_eq!(parse_date("2020-05-01"), Some(d));
        assert_eq!(parse_date("2020-05-01T23:00:00Z"), Some(d));
        assert_eq!(parse_date("2020-05-01T08:00:00"), Some(d));
        assert_eq!(parse_date("gestern"), None);
    }
}
