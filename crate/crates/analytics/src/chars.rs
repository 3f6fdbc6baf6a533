use crate::corpus::{HeadlineCorpus, Label};
use crate::AnalyticsError;

/// Colon, exclamation mark, question mark, full stop, hyphen, quotation
/// mark, comma, apostrophe.
pub const DEFAULT_CHARSET: [char; 8] = [':', '!', '?', '.', '-', '"', ',', '\''];

#[derive(Debug, Clone, PartialEq)]
pub struct CharUsage {
    pub ch: char,
    pub fake_with: usize,
    pub true_with: usize,
    /// Share of fake headlines containing `ch` at least once.
    pub rel_fake: f64,
    pub rel_true: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CharUsageTable {
    pub n_fake: usize,
    pub n_true: usize,
    /// In charset order.
    pub rows: Vec<CharUsage>,
}

impl CharUsageTable {
    pub fn get(&self, ch: char) -> Option<&CharUsage> {
        self.rows.iter().find(|r| r.ch == ch)
    }
}

pub fn char_usage(corpus: &HeadlineCorpus, charset: &[char]) -> Result<CharUsageTable, AnalyticsError> {
    if charset.is_empty() {
        return Err(AnalyticsError::EmptyCharset);
    }
    let n_fake = corpus.count(Label::Fake);
    let n_true = corpus.count(Label::True);
    let share = |with: usize, n: usize| if n == 0 { 0.0 } else { with as f64 / n as f64 };
    let rows = charset
        .iter()
        .map(|&ch| {
            let with = |label| corpus.texts(label).filter(|t| t.contains(ch)).count();
            let (fake_with, true_with) = (with(Label::Fake), with(Label::True));
            CharUsage {
                ch,
                fake_with,
                true_with,
                rel_fake: share(fake_with, n_fake),
                rel_true: share(true_with, n_true),
            }
        })
        .collect();
    Ok(CharUsageTable {
        n_fake,
        n_true,
        rows,
    })
}
