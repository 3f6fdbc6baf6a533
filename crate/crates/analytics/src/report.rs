use std::fs;
use std::path::{Path, PathBuf};

use fakeyou_core::model::GameStatus;
use fakeyou_core::snapshot::Snapshot;
use sha2::{Digest, Sha256};

use crate::chars::{char_usage, CharUsageTable, DEFAULT_CHARSET};
use crate::corpus::{build_corpus, Label};
use crate::scores::{normalized_scores, PlayerPerformance};
use crate::slopes::{learning_slopes, LearningSlope, DEFAULT_MIN_ROUNDS};
use crate::words::{word_density, WordDensity};
use crate::AnalyticsError;

pub const REPORT_FILES: [&str; 6] = [
    "word_density.csv",
    "ranksum.csv",
    "char_usage.csv",
    "player_scores.csv",
    "slopes.csv",
    "run_metadata.csv",
];
pub const MANIFEST_FILE: &str = "manifest.csv";

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub min_rounds: usize,
    pub charset: Vec<char>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            min_rounds: DEFAULT_MIN_ROUNDS,
            charset: DEFAULT_CHARSET.to_vec(),
        }
    }
}

/// Everything the export writes, computed from one snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub options: AnalysisOptions,
    pub metadata: Vec<(&'static str, String)>,
    pub density: WordDensity,
    pub chars: CharUsageTable,
    pub scores: Vec<PlayerPerformance>,
    pub slopes: Vec<LearningSlope>,
}

pub fn analyze(snapshot: &Snapshot, options: &AnalysisOptions) -> Result<Report, AnalyticsError> {
    let corpus = build_corpus(snapshot);
    let density = word_density(&corpus);
    let chars = char_usage(&corpus, &options.charset)?;
    let scores = normalized_scores(snapshot);
    let slopes = learning_slopes(snapshot, options.min_rounds);

    let games_with = |status| snapshot.games.iter().filter(|g| g.game.status == status).count();
    let metadata = vec![
        ("as_of_seq", snapshot.as_of_seq.to_string()),
        ("first_event_at", snapshot.first_event_at.map(|t| t.to_rfc3339()).unwrap_or_default()),
        ("last_event_at", snapshot.last_event_at.map(|t| t.to_rfc3339()).unwrap_or_default()),
        ("games_total", snapshot.games.len().to_string()),
        ("games_finished", games_with(GameStatus::Finished).to_string()),
        ("games_in_progress", games_with(GameStatus::InProgress).to_string()),
        ("games_cancelled_excluded", games_with(GameStatus::Cancelled).to_string()),
        ("corpus_fake", corpus.count(Label::Fake).to_string()),
        ("corpus_true", corpus.count(Label::True).to_string()),
        ("ranksum", if density.test.is_some() { "computed" } else { "omitted" }.to_string()),
        ("players_scored", scores.len().to_string()),
        ("players_with_slopes", slopes.len().to_string()),
        ("min_rounds", options.min_rounds.to_string()),
        ("charset", options.charset.iter().collect()),
    ];
    Ok(Report {
        options: options.clone(),
        metadata,
        density,
        chars,
        scores,
        slopes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub dir: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

/// Writes the report files plus `manifest.csv` into `out_dir`. Output is a
/// pure function of the report: same snapshot, same bytes.
pub fn export_report(report: &Report, out_dir: &Path) -> Result<Manifest, AnalyticsError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| AnalyticsError::Io { path, source }
    };
    fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let mut entries = Vec::new();
    for (name, body) in REPORT_FILES.iter().zip(render(report)) {
        let path = out_dir.join(name);
        fs::write(&path, &body).map_err(io(&path))?;
        entries.push(ManifestEntry {
            file: name.to_string(),
            bytes: body.len() as u64,
            sha256: hex::encode(Sha256::digest(&body)),
        });
    }
    let manifest = table(
        &["file", "bytes", "sha256"],
        entries
            .iter()
            .map(|e| vec![e.file.clone(), e.bytes.to_string(), e.sha256.clone()]),
    );
    let path = out_dir.join(MANIFEST_FILE);
    fs::write(&path, manifest).map_err(io(&path))?;
    Ok(Manifest {
        dir: out_dir.to_path_buf(),
        entries,
    })
}

/// File bodies in `REPORT_FILES` order.
fn render(report: &Report) -> Vec<Vec<u8>> {
    let d = &report.density;
    let word_density = table(
        &["label", "words", "count", "fraction"],
        [(Label::Fake, &d.fake), (Label::True, &d.truth)]
            .into_iter()
            .flat_map(|(label, h)| {
                h.counts.iter().map(move |(&words, &count)| {
                    vec![
                        label.as_str().to_string(),
                        words.to_string(),
                        count.to_string(),
                        h.fraction(words).to_string(),
                    ]
                })
            }),
    );
    let ranksum = table(
        &[
            "n_fake",
            "n_true",
            "rank_sum_smaller",
            "z",
            "p_two_sided",
            "mean_fake",
            "mean_true",
            "method",
        ],
        d.test.iter().map(|t| {
            vec![
                t.n_fake.to_string(),
                t.n_true.to_string(),
                t.rank_sum_smaller.to_string(),
                t.z.to_string(),
                t.p_two_sided.to_string(),
                t.mean_fake.to_string(),
                t.mean_true.to_string(),
                t.method.as_str().to_string(),
            ]
        }),
    );
    let char_usage = table(
        &["char", "fake_with", "true_with", "rel_fake", "rel_true"],
        report.chars.rows.iter().map(|r| {
            vec![
                r.ch.to_string(),
                r.fake_with.to_string(),
                r.true_with.to_string(),
                r.rel_fake.to_string(),
                r.rel_true.to_string(),
            ]
        }),
    );
    let player_scores = table(
        &[
            "player_id",
            "alias",
            "games",
            "rounds",
            "fake_points",
            "bet_points",
            "norm_fake",
            "norm_bet",
        ],
        report.scores.iter().map(|p| {
            vec![
                p.player_id.to_string(),
                p.alias.clone(),
                p.games.to_string(),
                p.rounds.to_string(),
                p.fake_points.to_string(),
                p.bet_points.to_string(),
                p.norm_fake.to_string(),
                p.norm_bet.to_string(),
            ]
        }),
    );
    let slopes = table(
        &["player_id", "alias", "rounds", "slope_fake", "slope_bet"],
        report.slopes.iter().map(|s| {
            vec![
                s.player_id.to_string(),
                s.alias.clone(),
                s.rounds.to_string(),
                s.slope_fake.to_string(),
                s.slope_bet.to_string(),
            ]
        }),
    );
    let metadata = table(
        &["key", "value"],
        report
            .metadata
            .iter()
            .map(|(k, v)| vec![k.to_string(), v.clone()]),
    );
    vec![word_density, ranksum, char_usage, player_scores, slopes, metadata]
}

fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("writing to memory");
    for row in rows {
        writer.write_record(&row).expect("writing to memory");
    }
    writer.into_inner().expect("flushing to memory")
}
