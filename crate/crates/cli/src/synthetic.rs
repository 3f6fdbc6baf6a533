//! Generated stand-in articles for simulations without ingested content.

use std::collections::BTreeSet;

use chrono::{DateTime, NaiveDate, Utc};
use fakeyou_core::model::NewArticle;
use fakeyou_core::seed::rng_for;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::bots::{EXTRAS, OBJECTS, SUBJECTS, VERBS};

pub const SYNTHETIC_SOURCE: &str = "synthetic";

/// `n` articles with distinct 4 to 6 word headlines and no colons.
/// Image references point nowhere; these articles are for simulation only.
pub fn synthetic_articles(n: usize, seed: u64, at: DateTime<Utc>) -> Vec<NewArticle> {
    let mut rng = rng_for(&[seed, 0xa271c1e5]);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let len = rng.random_range(4..=6);
        let mut words = vec![
            *SUBJECTS.choose(&mut rng).unwrap(),
            *VERBS.choose(&mut rng).unwrap(),
            *OBJECTS.choose(&mut rng).unwrap(),
        ];
        while words.len() < len {
            words.push(EXTRAS.choose(&mut rng).unwrap());
        }
        let headline = words.join(" ");
        if !seen.insert(headline.clone()) {
            continue;
        }
        let i = out.len();
        out.push(NewArticle {
            headline,
            image_ref: format!("{SYNTHETIC_SOURCE}/{i}.png"),
            source_url: format!("https://synthetic.invalid/{seed}/{i}"),
            published_date: NaiveDate::from_ymd_opt(2020, 5, 1).unwrap(),
            language: "de".into(),
            source_name: SYNTHETIC_SOURCE.into(),
            ingested_at: at,
        });
    }
    out
}
