use std::collections::BTreeMap;

use crate::corpus::{HeadlineCorpus, Label};
use crate::ranksum::{ranksum, RankSumResult};

/// Number of maximal non-whitespace runs. Punctuation is not stripped.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// Word-count distribution of one label, normalized to sum to 1.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Histogram {
    pub n: usize,
    pub counts: BTreeMap<usize, usize>,
}

impl Histogram {
    pub fn from_counts(values: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        Histogram {
            n: values.len(),
            counts,
        }
    }

    pub fn fraction(&self, words: usize) -> f64 {
        match self.n {
            0 => 0.0,
            n => self.counts.get(&words).copied().unwrap_or(0) as f64 / n as f64,
        }
    }

    pub fn fractions(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.counts.keys().map(|&w| (w, self.fraction(w)))
    }

    pub fn mean(&self) -> Option<f64> {
        if self.n == 0 {
            return None;
        }
        let total: usize = self.counts.iter().map(|(w, c)| w * c).sum();
        Some(total as f64 / self.n as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordDensity {
    pub fake: Histogram,
    pub truth: Histogram,
    /// `None` when either label is empty.
    pub test: Option<RankSumResult>,
}

pub fn word_density(corpus: &HeadlineCorpus) -> WordDensity {
    let counts = |label| -> Vec<usize> { corpus.texts(label).map(word_count).collect() };
    let fake = counts(Label::Fake);
    let truth = counts(Label::True);
    let as_f64 = |v: &[usize]| -> Vec<f64> { v.iter().map(|&c| c as f64).collect() };
    let test = ranksum(&as_f64(&fake), &as_f64(&truth)).ok();
    WordDensity {
        fake: Histogram::from_counts(&fake),
        truth: Histogram::from_counts(&truth),
        test,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_whitespace_runs() {
        assert_eq!(word_count(""), 0);
        assert_eq!(word_count("   "), 0);
        assert_eq!(word_count("Hello world"), 2);
        assert_eq!(word_count("Corona-Krise: Börsen stürzen ab"), 4);
        assert_eq!(word_count("  a\t b\n\nc  "), 3);
        assert_eq!(word_count("Wahl : Ergebnis"), 3);
    }

    #[test]
    fn histogram_fractions() {
        let h = Histogram::from_counts(&[3, 3, 4, 6]);
        assert_eq!(h.fraction(3), 0.5);
        assert_eq!(h.fraction(5), 0.0);
        assert_eq!(h.mean(), Some(4.0));
        let sum: f64 = h.fractions().map(|(_, f)| f).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert_eq!(Histogram::default().mean(), None);
    }
}
