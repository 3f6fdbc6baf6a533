//! Domain types for players, articles, games and rounds.

use std::collections::BTreeMap;

use chrono::{DateTime, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use crate::ids::{ArticleId, GameId, PlayerId, RoundId};

pub const PLAYERS_PER_GAME: usize = 3;
pub const ROUNDS_PER_GAME: usize = 3;
pub const OPTIONS_PER_ROUND: usize = 3;

/// Points for picking the original headline.
pub const CORRECT_BET_POINTS: u32 = 2;
/// Points for each opponent that picked your fake.
pub const FOOLED_POINTS: u32 = 3;

/// Highest fooling score one player can reach in one game: two opponents
/// fooled in each of the three rounds.
pub const MAX_FAKE_POINTS_PER_GAME: u32 =
    FOOLED_POINTS * (PLAYERS_PER_GAME as u32 - 1) * ROUNDS_PER_GAME as u32;
/// Highest betting score one player can reach in one game.
pub const MAX_BET_POINTS_PER_GAME: u32 = CORRECT_BET_POINTS * ROUNDS_PER_GAME as u32;

/// Alias-only account. Holds no personal data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Player {
    pub player_id: PlayerId,
    pub alias: String,
    pub created_at: DateTime<Utc>,
    /// Finished games; cancelled games never count.
    pub games_played: u32,
    /// Revealed rounds of non-cancelled games.
    pub rounds_played: u32,
    pub total_fake_points: u32,
    pub total_bet_points: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Article {
    pub article_id: ArticleId,
    pub headline: String,
    /// Path relative to the image store root.
    pub image_ref: String,
    pub source_url: String,
    pub published_date: NaiveDate,
    pub language: String,
    pub source_name: String,
    pub ingested_at: DateTime<Utc>,
}

/// Article fields before the store assigns an id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewArticle {
    pub headline: String,
    pub image_ref: String,
    pub source_url: String,
    pub published_date: NaiveDate,
    pub language: String,
    pub source_name: String,
    pub ingested_at: DateTime<Utc>,
}

impl NewArticle {
    pub fn into_article(self, article_id: ArticleId) -> Article {
        Article {
            article_id,
            headline: self.headline,
            image_ref: self.image_ref,
            source_url: self.source_url,
            published_date: self.published_date,
            language: self.language,
            source_name: self.source_name,
            ingested_at: self.ingested_at,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameStatus {
    InProgress,
    Finished,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Game {
    pub game_id: GameId,
    pub player_ids: [PlayerId; PLAYERS_PER_GAME],
    pub round_ids: [RoundId; ROUNDS_PER_GAME],
    pub status: GameStatus,
    pub created_at: DateTime<Utc>,
    pub finished_at: Option<DateTime<Utc>>,
    pub rng_seed: u64,
}

impl Game {
    pub fn is_member(&self, player: PlayerId) -> bool {
        self.player_ids.contains(&player)
    }

    pub fn opponents(&self, player: PlayerId) -> impl Iterator<Item = PlayerId> + '_ {
        self.player_ids.iter().copied().filter(move |p| *p != player)
    }
}

/// Phases only ever advance in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    Writing,
    Betting,
    Revealed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FakeSubmission {
    pub player_id: PlayerId,
    pub text: String,
    pub submitted_at: DateTime<Utc>,
}

/// Where a candidate headline came from. A bet's choice is the provenance of
/// the option the bettor picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    TrueHeadline,
    FakeOf(PlayerId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bet {
    pub player_id: PlayerId,
    pub choice: Provenance,
    /// 1-based position in the bettor's own option set.
    pub position: u8,
    pub placed_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub round_id: RoundId,
    pub game_id: GameId,
    pub index: u8,
    pub article_id: ArticleId,
    /// Copy of the article headline, kept so the event log is self-contained.
    pub truth: String,
    pub image_ref: String,
    pub phase: Phase,
    pub submissions: BTreeMap<PlayerId, FakeSubmission>,
    pub bets: BTreeMap<PlayerId, Bet>,
    /// `None` once revealed.
    pub phase_deadline: Option<DateTime<Utc>>,
    pub score_events: Vec<ScoreEvent>,
    /// Log sequence number of the scoring record; orders rounds in time.
    pub revealed_seq: Option<u64>,
}

impl Round {
    pub fn submission_of(&self, author: PlayerId) -> Option<&FakeSubmission> {
        self.submissions.get(&author)
    }

    pub fn text_of(&self, provenance: Provenance) -> Option<&str> {
        match provenance {
            Provenance::TrueHeadline => Some(&self.truth),
            Provenance::FakeOf(author) => self.submissions.get(&author).map(|s| s.text.as_str()),
        }
    }

    /// Points earned by `player` in this round, split into (fake, bet).
    pub fn points_of(&self, player: PlayerId) -> (u32, u32) {
        self.score_events
            .iter()
            .filter(|e| e.beneficiary_player_id == player)
            .fold((0, 0), |(fake, bet), e| match e.kind {
                ScoreKind::Fooled => (fake + e.points, bet),
                ScoreKind::CorrectBet => (fake, bet + e.points),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadlineOption {
    pub text: String,
    pub provenance: Provenance,
}

/// The three candidates one viewer sees in one round. Provenance is carried
/// here but must not cross the transport boundary before the reveal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionSet {
    pub round_id: RoundId,
    pub viewer_id: PlayerId,
    pub options: Vec<HeadlineOption>,
}

impl OptionSet {
    pub fn texts(&self) -> Vec<&str> {
        self.options.iter().map(|o| o.text.as_str()).collect()
    }

    pub fn provenances(&self) -> Vec<Provenance> {
        self.options.iter().map(|o| o.provenance).collect()
    }

    /// Resolves a 1-based position.
    pub fn at(&self, position: u8) -> Option<&HeadlineOption> {
        (position as usize)
            .checked_sub(1)
            .and_then(|i| self.options.get(i))
    }

    pub fn position_of(&self, provenance: Provenance) -> Option<u8> {
        self.options
            .iter()
            .position(|o| o.provenance == provenance)
            .map(|i| i as u8 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScoreKind {
    CorrectBet,
    Fooled,
}

impl ScoreKind {
    pub fn points(self) -> u32 {
        match self {
            ScoreKind::CorrectBet => CORRECT_BET_POINTS,
            ScoreKind::Fooled => FOOLED_POINTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreEvent {
    pub game_id: GameId,
    pub round_id: RoundId,
    pub beneficiary_player_id: PlayerId,
    pub kind: ScoreKind,
    pub points: u32,
    pub caused_by_player_id: PlayerId,
    pub at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthToken {
    pub token: String,
    pub player_id: PlayerId,
    pub issued_at: DateTime<Utc>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_game_maxima() {
        assert_eq!(MAX_FAKE_POINTS_PER_GAME, 18);
        assert_eq!(MAX_BET_POINTS_PER_GAME, 6);
    }

    #[test]
    fn phases_are_ordered() {
        assert!(Phase::Writing < Phase::Betting);
        assert!(Phase::Betting < Phase::Revealed);
    }
}
