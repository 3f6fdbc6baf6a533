use std::collections::BTreeSet;

use fakeyou_core::model::Phase;
use fakeyou_core::snapshot::Snapshot;
use fakeyou_core::PlayerId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Fake,
    True,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Fake => "fake",
            Label::True => "true",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub text: String,
    pub label: Label,
    /// Author of a fake; `None` for original headlines.
    pub player_id: Option<PlayerId>,
    pub round_seq: Option<u64>,
}

/// Headlines players actually saw: every revealed round of every game that
/// was not cancelled. Fakes count once per submission; an original headline
/// counts once however many rounds reused its article.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HeadlineCorpus {
    pub entries: Vec<CorpusEntry>,
}

impl HeadlineCorpus {
    pub fn texts(&self, label: Label) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(move |e| e.label == label)
            .map(|e| e.text.as_str())
    }

    pub fn count(&self, label: Label) -> usize {
        self.texts(label).count()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn build_corpus(snapshot: &Snapshot) -> HeadlineCorpus {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for record in snapshot.games.iter().filter(|g| !g.is_cancelled()) {
        for round in record.rounds.iter().filter(|r| r.phase == Phase::Revealed) {
            if seen.insert(round.article_id) {
                entries.push(CorpusEntry {
                    text: round.truth.clone(),
                    label: Label::True,
                    player_id: None,
                    round_seq: round.revealed_seq,
                });
            }
            entries.extend(round.submissions.values().map(|s| CorpusEntry {
                text: s.text.clone(),
                label: Label::Fake,
                player_id: Some(s.player_id),
                round_seq: round.revealed_seq,
            }));
        }
    }
    HeadlineCorpus { entries }
}
