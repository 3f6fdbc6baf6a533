//! Scoring rules: 2 points for picking the original headline, 3 points to the
//! author for every opponent who picked their fake.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::ids::{GameId, PlayerId};
use crate::model::{
    Game, GameStatus, Phase, Provenance, Round, ScoreEvent, ScoreKind, PLAYERS_PER_GAME,
};

/// Turns the three bets of a round into score events, in bettor id order.
/// Pure: the result depends only on the bets.
pub fn score_round(round: &Round, at: DateTime<Utc>) -> Result<Vec<ScoreEvent>, GameError> {
    if round.phase == Phase::Revealed || !round.score_events.is_empty() {
        return Err(GameError::AlreadyScored);
    }
    if round.bets.len() < PLAYERS_PER_GAME {
        return Err(GameError::NotReady);
    }
    let events = round
        .bets
        .values()
        .map(|bet| {
            let (beneficiary, kind) = match bet.choice {
                Provenance::TrueHeadline => (bet.player_id, ScoreKind::CorrectBet),
                Provenance::FakeOf(author) => (author, ScoreKind::Fooled),
            };
            ScoreEvent {
                game_id: round.game_id,
                round_id: round.round_id,
                beneficiary_player_id: beneficiary,
                kind,
                points: kind.points(),
                caused_by_player_id: bet.player_id,
                at,
            }
        })
        .collect();
    Ok(events)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerTotals {
    pub player_id: PlayerId,
    pub fake_points: u32,
    pub bet_points: u32,
    pub total: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSummary {
    pub game_id: GameId,
    pub status: GameStatus,
    /// False for cancelled games, which analytics ignore.
    pub counts_toward_analytics: bool,
    /// In the game's seating order.
    pub players: Vec<PlayerTotals>,
    /// Everyone sharing the highest total.
    pub winners: Vec<PlayerId>,
}

pub fn summarize<'a>(game: &Game, rounds: impl IntoIterator<Item = &'a Round>) -> GameSummary {
    let mut players: Vec<PlayerTotals> = game
        .player_ids
        .iter()
        .map(|&player_id| PlayerTotals {
            player_id,
            fake_points: 0,
            bet_points: 0,
            total: 0,
        })
        .collect();
    for event in rounds.into_iter().flat_map(|r| r.score_events.iter()) {
        if let Some(t) = players
            .iter_mut()
            .find(|t| t.player_id == event.beneficiary_player_id)
        {
            match event.kind {
                ScoreKind::Fooled => t.fake_points += event.points,
                ScoreKind::CorrectBet => t.bet_points += event.points,
            }
            t.total += event.points;
        }
    }
    let best = players.iter().map(|t| t.total).max().unwrap_or(0);
    let winners = players
        .iter()
        .filter(|t| t.total == best)
        .map(|t| t.player_id)
        .collect();
    GameSummary {
        game_id: game.game_id,
        status: game.status,
        counts_toward_analytics: game.status != GameStatus::Cancelled,
        players,
        winners,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use chrono::TimeZone;

    use super::*;
    use crate::ids::{ArticleId, RoundId};
    use crate::model::{Bet, FakeSubmission};

    const A: PlayerId = PlayerId(1);
    const B: PlayerId = PlayerId(2);
    const C: PlayerId = PlayerId(3);

    fn t0() -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2020, 6, 1, 12, 0, 0).unwrap()
    }

    fn round_with_bets(bets: &[(PlayerId, Provenance)]) -> Round {
        let submissions = [A, B, C]
            .iter()
            .map(|&p| {
                (
                    p,
                    FakeSubmission {
                        player_id: p,
                        text: format!("fake by {p}"),
                        submitted_at: t0(),
                    },
                )
            })
            .collect();
        let bets: BTreeMap<_, _> = bets
            .iter()
            .map(|&(p, choice)| {
                (
                    p,
                    Bet {
                        player_id: p,
                        choice,
                        position: 1,
                        placed_at: t0(),
                    },
                )
            })
            .collect();
        Round {
            round_id: RoundId(10),
            game_id: GameId(1),
            index: 0,
            article_id: ArticleId(1),
            truth: "truth".into(),
            image_ref: "img".into(),
            phase: Phase::Betting,
            submissions,
            bets,
            phase_deadline: None,
            score_events: vec![],
            revealed_seq: None,
        }
    }

    fn total(events: &[ScoreEvent]) -> u32 {
        events.iter().map(|e| e.points).sum()
    }

    #[test]
    fn all_truth_pays_six() {
        use Provenance::TrueHeadline as T;
        let events = score_round(&round_with_bets(&[(A, T), (B, T), (C, T)]), t0()).unwrap();
        assert_eq!(events.len(), 3);
        assert!(events
            .iter()
            .all(|e| e.kind == ScoreKind::CorrectBet && e.points == 2));
        assert_eq!(total(&events), 6);
    }

    #[test]
    fn two_fooled_by_same_author() {
        // B and C both pick A's fake, A picks the truth: A earns 3 + 3 + 2.
        let round = round_with_bets(&[
            (A, Provenance::TrueHeadline),
            (B, Provenance::FakeOf(A)),
            (C, Provenance::FakeOf(A)),
        ]);
        let mut r = round.clone();
        r.score_events = score_round(&round, t0()).unwrap();
        assert_eq!(r.points_of(A), (6, 2));
        assert_eq!(r.points_of(B), (0, 0));
        assert_eq!(r.points_of(C), (0, 0));
        assert_eq!(total(&r.score_events), 8);
        for e in &r.score_events {
            if e.kind == ScoreKind::Fooled {
                assert_ne!(e.beneficiary_player_id, e.caused_by_player_id);
            } else {
                assert_eq!(e.beneficiary_player_id, e.caused_by_player_id);
            }
        }
    }

    #[test]
    fn not_ready_and_already_scored() {
        let partial = round_with_bets(&[(A, Provenance::TrueHeadline)]);
        assert!(matches!(score_round(&partial, t0()), Err(GameError::NotReady)));
        let mut done = round_with_bets(&[
            (A, Provenance::TrueHeadline),
            (B, Provenance::TrueHeadline),
            (C, Provenance::TrueHeadline),
        ]);
        done.phase = Phase::Revealed;
        assert!(matches!(score_round(&done, t0()), Err(GameError::AlreadyScored)));
    }

    fn game() -> Game {
        Game {
            game_id: GameId(1),
            player_ids: [A, B, C],
            round_ids: [RoundId(1), RoundId(2), RoundId(3)],
            status: GameStatus::Finished,
            created_at: t0(),
            finished_at: Some(t0()),
            rng_seed: 0,
        }
    }

    fn scored(bets: &[(PlayerId, Provenance)]) -> Round {
        let mut r = round_with_bets(bets);
        r.score_events = score_round(&r, t0()).unwrap();
        r.phase = Phase::Revealed;
        r
    }

    #[test]
    fn summary_single_and_shared_winners() {
        use Provenance::{FakeOf, TrueHeadline as T};
        let rounds = vec![
            scored(&[(A, T), (B, FakeOf(A)), (C, FakeOf(A))]), // A 8
            scored(&[(A, T), (B, T), (C, T)]),                 // A 2, B 2, C 2
            scored(&[(A, FakeOf(B)), (B, T), (C, T)]),         // B 3+2, C 2
        ];
        let summary = summarize(&game(), &rounds);
        let totals: Vec<u32> = summary.players.iter().map(|t| t.total).collect();
        assert_eq!(totals, vec![10, 7, 4]);
        assert_eq!(summary.winners, vec![A]);

        let tied = vec![
            scored(&[(A, FakeOf(B)), (B, FakeOf(A)), (C, T)]), // A 3, B 3, C 2
            scored(&[(A, FakeOf(B)), (B, FakeOf(A)), (C, T)]), // A 6, B 6, C 4
        ];
        let summary = summarize(&game(), &tied);
        assert_eq!(
            summary.players.iter().map(|t| t.total).collect::<Vec<_>>(),
            vec![6, 6, 4]
        );
        assert_eq!(summary.winners, vec![A, B]);
    }

    #[test]
    fn cancelled_summary_is_flagged() {
        let mut g = game();
        g.status = GameStatus::Cancelled;
        let summary = summarize(&g, &[]);
        assert!(!summary.counts_toward_analytics);
        assert_eq!(summary.winners.len(), 3);
    }
}
