//! Scripted players for simulations.

use std::fmt;
use std::str::FromStr;

use fakeyou_core::model::{OptionSet, Provenance};
use fakeyou_core::text::same_text;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::CliError;

/// How a bot words its fake headlines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FakeStyle {
    /// Hook word and colon up front, 7 to 10 words.
    Sensational,
    /// Five to eight words, no colon.
    Plain,
    /// The original headline with one word swapped.
    Echo,
}

/// Betting and writing behaviour of one bot. Every policy writes fakes;
/// only `TemplateFaker` chooses the style, the others write `Plain`.
/// `TemplateFaker` bets uniformly at random.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BotPolicy {
    RandomBet,
    /// Picks the original headline with probability `p`, otherwise one of
    /// the two fakes uniformly.
    TruthBiased(f64),
    TemplateFaker(FakeStyle),
}

impl BotPolicy {
    pub fn truth_biased(p: f64) -> Result<Self, CliError> {
        if (0.0..=1.0).contains(&p) {
            Ok(BotPolicy::TruthBiased(p))
        } else {
            Err(CliError::InvalidPolicy(format!("truth:{p}")))
        }
    }

    pub fn style(&self) -> FakeStyle {
        match self {
            BotPolicy::TemplateFaker(style) => *style,
            _ => FakeStyle::Plain,
        }
    }

    /// A non-empty fake that never equals `truth`.
    pub fn write_fake(&self, truth: &str, rng: &mut impl Rng) -> String {
        loop {
            let text = match self.style() {
                FakeStyle::Sensational => sensational(rng),
                FakeStyle::Plain => plain(rng),
                FakeStyle::Echo => echo(truth, rng),
            };
            if !same_text(&text, truth) {
                return text;
            }
        }
    }

    /// 1-based position to bet on.
    pub fn choose(&self, options: &OptionSet, rng: &mut impl Rng) -> usize {
        let n = options.options.len();
        match self {
            BotPolicy::TruthBiased(p) => {
                let truth = options.position_of(Provenance::TrueHeadline).expect("truth is offered") as usize;
                if rng.random_bool(*p) {
                    truth
                } else {
                    let others: Vec<usize> = (1..=n).filter(|&i| i != truth).collect();
                    *others.choose(rng).expect("two fakes")
                }
            }
            _ => rng.random_range(1..=n),
        }
    }
}

impl FromStr for BotPolicy {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::InvalidPolicy(s.to_string());
        match s.split_once(':') {
            None if s == "random" => Ok(BotPolicy::RandomBet),
            Some(("truth", p)) => BotPolicy::truth_biased(p.parse().map_err(|_| bad())?).map_err(|_| bad()),
            Some(("template", style)) => match style {
                "sensational" => Ok(BotPolicy::TemplateFaker(FakeStyle::Sensational)),
                "plain" => Ok(BotPolicy::TemplateFaker(FakeStyle::Plain)),
                "echo" => Ok(BotPolicy::TemplateFaker(FakeStyle::Echo)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for BotPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BotPolicy::RandomBet => f.write_str("random"),
            BotPolicy::TruthBiased(p) => write!(f, "truth:{p}"),
            BotPolicy::TemplateFaker(FakeStyle::Sensational) => f.write_str("template:sensational"),
            BotPolicy::TemplateFaker(FakeStyle::Plain) => f.write_str("template:plain"),
            BotPolicy::TemplateFaker(FakeStyle::Echo) => f.write_str("template:echo"),
        }
    }
}

pub(crate) const SUBJECTS: &[&str] = &[
    "Regierung", "Minister", "Kanzlerin", "Bürgermeister", "Forscher", "Polizei",
    "Bundestag", "Fußballstar", "Autobauer", "Wetterdienst", "Zoodirektor", "Bahnchef",
];
pub(crate) const VERBS: &[&str] = &[
    "verbietet", "plant", "fordert", "entdeckt", "testet", "verschiebt",
    "erlaubt", "startet", "stoppt", "kauft",
];
pub(crate) const OBJECTS: &[&str] = &[
    "Fahrräder", "Sonntagsarbeit", "Tempolimit", "Impfpflicht", "Weihnachtsmärkte",
    "Hausaufgaben", "Kohleausstieg", "Mondflüge", "Plastiktüten", "Grenzkontrollen",
    "Mietpreise", "Schulferien",
];
pub(crate) const EXTRAS: &[&str] = &[
    "bundesweit", "sofort", "morgen", "erneut", "vorerst", "teilweise", "endgültig",
    "Berlin", "Bayern", "Hamburg", "Sachsen", "Montag",
];
const HOOKS: &[&str] = &[
    "Eilmeldung", "Skandal", "Enthüllt", "Unglaublich", "Exklusiv", "Schock", "Geheimplan", "Insider",
];
const SPICE: &[&str] = &[
    "heimlich", "angeblich", "komplett", "alle", "niemals", "wieder", "offiziell", "plötzlich",
];

fn pick<'a>(rng: &mut impl Rng, words: &[&'a str]) -> &'a str {
    words.choose(rng).expect("non-empty word list")
}

fn sentence(rng: &mut impl Rng, len: usize, fill: &[&[&str]]) -> Vec<String> {
    let mut words = vec![
        pick(rng, SUBJECTS).to_string(),
        pick(rng, VERBS).to_string(),
        pick(rng, OBJECTS).to_string(),
    ];
    while words.len() < len {
        let pool = fill[rng.random_range(0..fill.len())];
        words.push(pick(rng, pool).to_string());
    }
    words
}

fn sensational(rng: &mut impl Rng) -> String {
    let len = rng.random_range(7..=10);
    let mut words = vec![format!("{}:", pick(rng, HOOKS))];
    words.extend(sentence(rng, len - 1, &[SPICE, EXTRAS]));
    let mut text = words.join(" ");
    if rng.random_bool(0.3) {
        text.push('!');
    }
    text
}

fn plain(rng: &mut impl Rng) -> String {
    let len = rng.random_range(5..=8);
    sentence(rng, len, &[SPICE, EXTRAS]).join(" ")
}

fn echo(truth: &str, rng: &mut impl Rng) -> String {
    let mut words: Vec<String> = truth.split_whitespace().map(str::to_string).collect();
    if words.is_empty() {
        return plain(rng);
    }
    let i = rng.random_range(0..words.len());
    words[i] = pick(rng, SPICE).to_string();
    words.join(" ")
}
