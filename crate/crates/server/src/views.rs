//! Request and response bodies. Field names are part of the public
//! contract documented in docs/API.md.

use chrono::{DateTime, Utc};
use fakeyou_core::model::{Game, GameStatus, Phase, Player, Provenance, Round};
use fakeyou_core::scoring::GameSummary;
use fakeyou_core::{GameId, PlayerId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegisterRequest {
    pub alias: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegisterResponse {
    pub player: Player,
    pub token: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HintAction {
    WriteFake,
    PlaceBet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnHint {
    pub round_index: u8,
    pub action: HintAction,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LobbyGame {
    pub id: GameId,
    pub status: GameStatus,
    pub created_at: DateTime<Utc>,
    pub finished_at: Option<DateTime<Utc>>,
    /// Rounds waiting for the caller.
    pub your_turn_hints: Vec<TurnHint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LobbyResponse {
    pub player_id: PlayerId,
    /// 1-based; `null` when not queued.
    pub queue_position: Option<usize>,
    /// Newest first.
    pub games: Vec<LobbyGame>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueueResponse {
    /// 1-based; `null` once matched.
    pub position: Option<usize>,
    /// Set once the caller has been matched into a game.
    pub game_id: Option<GameId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FakeRequest {
    pub text: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetRequest {
    /// 1-based position in the caller's option list.
    pub position: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptionsResponse {
    pub round_index: u8,
    /// Exactly three texts; position n is element n - 1.
    pub options: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Seat {
    pub player_id: PlayerId,
    pub alias: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Choice {
    Truth,
    Fake { author: PlayerId },
}

impl From<Provenance> for Choice {
    fn from(p: Provenance) -> Self {
        match p {
            Provenance::TrueHeadline => Choice::Truth,
            Provenance::FakeOf(author) => Choice::Fake { author },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RevealedFake {
    pub author: PlayerId,
    pub text: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RevealedBet {
    pub player_id: PlayerId,
    pub position: u8,
    pub choice: Choice,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundPoints {
    pub player_id: PlayerId,
    pub fake_points: u32,
    pub bet_points: u32,
}

/// Present only once a round is revealed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Reveal {
    pub truth: String,
    pub fakes: Vec<RevealedFake>,
    pub bets: Vec<RevealedBet>,
    pub points: Vec<RoundPoints>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundView {
    pub index: u8,
    pub phase: Phase,
    pub image_url: String,
    pub phase_deadline: Option<DateTime<Utc>>,
    /// Who has written a fake; texts stay hidden until the reveal.
    pub submitted: Vec<PlayerId>,
    pub bets_placed: Vec<PlayerId>,
    pub your_fake: Option<String>,
    pub your_bet: Option<u8>,
    pub reveal: Option<Reveal>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameView {
    pub game_id: GameId,
    pub status: GameStatus,
    pub created_at: DateTime<Utc>,
    pub finished_at: Option<DateTime<Utc>>,
    pub players: Vec<Seat>,
    pub rounds: Vec<RoundView>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundResult {
    pub index: u8,
    pub phase: Phase,
    pub reveal: Option<Reveal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalsView {
    pub player_id: PlayerId,
    pub alias: String,
    pub fake_points: u32,
    pub bet_points: u32,
    pub total: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryView {
    pub status: GameStatus,
    pub counts_toward_analytics: bool,
    /// Seat order; only revealed rounds count.
    pub players: Vec<TotalsView>,
    /// Everybody tied for the highest total.
    pub winners: Vec<PlayerId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultsResponse {
    pub game_id: GameId,
    pub rounds: Vec<RoundResult>,
    pub summary: SummaryView,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatsResponse {
    pub player_id: PlayerId,
    pub alias: String,
    pub games_played: u32,
    pub rounds_played: u32,
    pub total_fake_points: u32,
    pub total_bet_points: u32,
    /// Fake points over finished games / (games × 18); `null` without games.
    pub norm_fake: Option<f64>,
    /// Bet points over finished games / (games × 6); `null` without games.
    pub norm_bet: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HealthResponse {
    pub status: String,
}

pub(crate) fn reveal(round: &Round) -> Option<Reveal> {
    if round.phase != Phase::Revealed {
        return None;
    }
    Some(Reveal {
        truth: round.truth.clone(),
        fakes: round
            .submissions
            .values()
            .map(|s| RevealedFake {
                author: s.player_id,
                text: s.text.clone(),
            })
            .collect(),
        bets: round
            .bets
            .values()
            .map(|b| RevealedBet {
                player_id: b.player_id,
                position: b.position,
                choice: b.choice.into(),
            })
            .collect(),
        points: round
            .bets
            .keys()
            .map(|&player_id| {
                let (fake_points, bet_points) = round.points_of(player_id);
                RoundPoints {
                    player_id,
                    fake_points,
                    bet_points,
                }
            })
            .collect(),
    })
}

pub(crate) fn round_view(round: &Round, viewer: PlayerId, image_prefix: &str) -> RoundView {
    RoundView {
        index: round.index,
        phase: round.phase,
        image_url: format!("{image_prefix}/{}", round.image_ref),
        phase_deadline: round.phase_deadline,
        submitted: round.submissions.keys().copied().collect(),
        bets_placed: round.bets.keys().copied().collect(),
        your_fake: round.submission_of(viewer).map(|s| s.text.clone()),
        your_bet: round.bets.get(&viewer).map(|b| b.position),
        reveal: reveal(round),
    }
}

pub(crate) fn turn_hints(game: &Game, rounds: &[&Round], viewer: PlayerId) -> Vec<TurnHint> {
    if game.status != GameStatus::InProgress {
        return Vec::new();
    }
    rounds
        .iter()
        .filter_map(|r| {
            let action = match r.phase {
                Phase::Writing if !r.submissions.contains_key(&viewer) => HintAction::WriteFake,
                Phase::Betting if !r.bets.contains_key(&viewer) => HintAction::PlaceBet,
                _ => return None,
            };
            Some(TurnHint {
                round_index: r.index,
                action,
            })
        })
        .collect()
}

pub(crate) fn summary_view(summary: &GameSummary, alias: impl Fn(PlayerId) -> String) -> SummaryView {
    SummaryView {
        status: summary.status,
        counts_toward_analytics: summary.counts_toward_analytics,
        players: summary
            .players
            .iter()
            .map(|t| TotalsView {
                player_id: t.player_id,
                alias: alias(t.player_id),
                fake_points: t.fake_points,
                bet_points: t.bet_points,
                total: t.total,
            })
            .collect(),
        winners: summary.winners.clone(),
    }
}
