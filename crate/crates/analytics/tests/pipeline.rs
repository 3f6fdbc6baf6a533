mod common;

use chrono::Duration;
use common::*;
use fakeyou_analytics::chars::DEFAULT_CHARSET;
use fakeyou_analytics::corpus::{build_corpus, Label};
use fakeyou_analytics::report::{MANIFEST_FILE, REPORT_FILES};
use fakeyou_analytics::scores::normalized_scores;
use fakeyou_analytics::slopes::learning_slopes;
use fakeyou_analytics::{analyze, export_report, AnalysisOptions};
use fakeyou_core::model::Provenance;
use fakeyou_core::snapshot::{Snapshot, SnapshotFilter};
use sha2::{Digest, Sha256};

#[test]
fn corpus_skips_cancelled_games() {
    assert!(build_corpus(&Snapshot::default()).is_empty());

    let (engine, clock) = engine(6);
    let ids = register(&engine, &["a", "b", "c"]);
    let game = start(&engine, &ids);
    play(&engine, &game, 3, plain_fake, |_, o| o.provenances()[0]);
    let corpus = build_corpus(&engine.snapshot(&SnapshotFilter::default()));
    assert_eq!(corpus.count(Label::True), 3);
    assert_eq!(corpus.count(Label::Fake), 9);

    let second = start(&engine, &ids);
    play(&engine, &second, 2, plain_fake, |_, o| o.provenances()[0]);
    clock.advance(Duration::days(3));
    engine.cancel_stale(clock.peek()).unwrap();
    let corpus = build_corpus(&engine.snapshot(&SnapshotFilter::default()));
    assert_eq!(corpus.count(Label::True), 3, "cancelled game contributes nothing");
    assert_eq!(corpus.count(Label::Fake), 9);
}

#[test]
fn reused_articles_count_once() {
    // three articles means every game shows the same three originals
    let (engine, _) = engine(3);
    let ids = register(&engine, &["a", "b", "c"]);
    for _ in 0..4 {
        let game = start(&engine, &ids);
        play(&engine, &game, 3, plain_fake, |_, o| o.provenances()[0]);
    }
    let corpus = build_corpus(&engine.snapshot(&SnapshotFilter::default()));
    assert_eq!(corpus.count(Label::Fake), 36);
    assert_eq!(corpus.count(Label::True), 3);
}

#[test]
fn normalized_scores_follow_the_maxima() {
    let (engine, _) = engine(9);
    let ids = register(&engine, &["a", "b", "c"]);
    let a = ids[0];
    // game 1: a fools both opponents in every round and always finds the truth
    let g1 = start(&engine, &ids);
    play(&engine, &g1, 3, plain_fake, |p, _| {
        if p == a {
            Provenance::TrueHeadline
        } else {
            Provenance::FakeOf(a)
        }
    });
    // game 2: a never finds the truth, nobody is fooled by a
    let g2 = start(&engine, &ids);
    play(&engine, &g2, 3, plain_fake, |p, o| {
        if p == a {
            o.provenances().into_iter().find(|c| *c != Provenance::TrueHeadline).unwrap()
        } else {
            Provenance::TrueHeadline
        }
    });
    let scores = normalized_scores(&engine.snapshot(&SnapshotFilter::default()));
    let pa = &scores[0];
    assert_eq!(pa.player_id, a);
    assert_eq!(pa.games, 2);
    assert_eq!(pa.bet_points, 6);
    assert_eq!(pa.norm_bet, 0.5);
    assert_eq!(pa.fake_points, 18);
    assert_eq!(pa.norm_fake, 0.5);
    assert_eq!(scores.len(), 3);
    for s in &scores {
        assert!((0.0..=1.0).contains(&s.norm_fake));
        assert!((0.0..=1.0).contains(&s.norm_bet));
    }
}

#[test]
fn unfinished_games_are_not_scored() {
    let (engine, _) = engine(3);
    let ids = register(&engine, &["a", "b", "c"]);
    let game = start(&engine, &ids);
    play(&engine, &game, 1, plain_fake, |_, _| Provenance::TrueHeadline);
    assert!(normalized_scores(&engine.snapshot(&SnapshotFilter::default())).is_empty());
}

#[test]
fn slopes_need_min_rounds() {
    let (engine, _) = engine(40);
    let ids = register(&engine, &["a", "b", "c"]);
    for g in 0..6 {
        let game = start(&engine, &ids);
        // a gets the truth only in later games
        play(&engine, &game, 3, plain_fake, |p, o| {
            if p == ids[0] && g < 3 {
                o.provenances().into_iter().find(|c| *c != Provenance::TrueHeadline).unwrap()
            } else {
                Provenance::TrueHeadline
            }
        });
    }
    let snapshot = engine.snapshot(&SnapshotFilter::default());
    let slopes = learning_slopes(&snapshot, 16);
    assert_eq!(slopes.len(), 3);
    assert_eq!(slopes[0].rounds, 18);
    assert!(slopes[0].slope_bet > 0.0);
    assert_eq!(slopes[1].slope_bet, 0.0);
    assert!(learning_slopes(&snapshot, 19).is_empty());
}

fn read_dir(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn empty_snapshot_exports_headers_only() {
    let dir = tempfile::tempdir().unwrap();
    let report = analyze(&Snapshot::default(), &AnalysisOptions::default()).unwrap();
    assert!(report.density.test.is_none());
    let manifest = export_report(&report, dir.path()).unwrap();
    assert_eq!(manifest.entries.len(), REPORT_FILES.len());
    for name in &REPORT_FILES[..5] {
        let body = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let lines: Vec<&str> = body.lines().collect();
        // char usage always lists the charset
        if *name == "char_usage.csv" {
            assert_eq!(lines.len(), 1 + DEFAULT_CHARSET.len());
        } else {
            assert_eq!(lines.len(), 1, "{name}: {body}");
        }
    }
    let meta = std::fs::read_to_string(dir.path().join("run_metadata.csv")).unwrap();
    assert!(meta.contains("ranksum,omitted"));
}

#[test]
fn export_is_deterministic_and_manifest_matches() {
    let (engine, _) = engine(30);
    let ids = register(&engine, &["a", "b", "c", "d"]);
    for g in 0..8 {
        let seats = [ids[g % 4], ids[(g + 1) % 4], ids[(g + 2) % 4]];
        let game = start(&engine, &seats);
        play(&engine, &game, 3, |p, i| format!("Eilmeldung: {p} sagt {i}!"), |_, o| o.provenances()[g % 3]);
    }
    let events = engine.storage().events().unwrap();
    let options = AnalysisOptions {
        min_rounds: 4,
        ..AnalysisOptions::default()
    };
    let export = |dir: &std::path::Path| {
        let snapshot = Snapshot::from_events(&events, &SnapshotFilter::default()).unwrap();
        export_report(&analyze(&snapshot, &options).unwrap(), dir).unwrap()
    };
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let m1 = export(d1.path());
    let m2 = export(d2.path());
    assert_eq!(m1.entries, m2.entries);
    let files = read_dir(d1.path());
    assert_eq!(files, read_dir(d2.path()));
    assert_eq!(files.len(), REPORT_FILES.len() + 1);

    for entry in &m1.entries {
        let body = std::fs::read(d1.path().join(&entry.file)).unwrap();
        assert_eq!(entry.bytes, body.len() as u64);
        assert_eq!(entry.sha256, hex_digest(&body));
    }
    let manifest = std::fs::read_to_string(d1.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(manifest.lines().count(), 1 + REPORT_FILES.len());

    let chars = std::fs::read_to_string(d1.path().join("char_usage.csv")).unwrap();
    assert!(chars.contains(":,72,0,1,0"), "{chars}");
    let slopes = std::fs::read_to_string(d1.path().join("slopes.csv")).unwrap();
    assert_eq!(slopes.lines().count(), 5);
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

mod bounds {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn normalized_scores_stay_in_unit_interval(
            picks in proptest::collection::vec(0usize..3, 36),
            seats in proptest::collection::vec(0usize..5, 4),
        ) {
            let (engine, _) = engine(20);
            let ids = register(&engine, &["p0", "p1", "p2", "p3", "p4"]);
            let mut pick = picks.into_iter().cycle();
            for first in seats {
                let game = start(&engine, &[ids[first], ids[(first + 1) % 5], ids[(first + 3) % 5]]);
                play(&engine, &game, 3, plain_fake, |_, o| o.provenances()[pick.next().unwrap()]);
            }
            for s in normalized_scores(&engine.snapshot(&SnapshotFilter::default())) {
                prop_assert!((0.0..=1.0).contains(&s.norm_fake));
                prop_assert!((0.0..=1.0).contains(&s.norm_bet));
            }
        }
    }
}
