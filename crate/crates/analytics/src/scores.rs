use std::collections::BTreeMap;

use fakeyou_core::model::{GameStatus, MAX_BET_POINTS_PER_GAME, MAX_FAKE_POINTS_PER_GAME};
use fakeyou_core::snapshot::Snapshot;
use fakeyou_core::PlayerId;

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerPerformance {
    pub player_id: PlayerId,
    pub alias: String,
    /// Finished games; cancelled and unfinished ones are not counted.
    pub games: u32,
    pub rounds: u32,
    pub fake_points: u32,
    pub bet_points: u32,
    /// fake_points / (games × 18)
    pub norm_fake: f64,
    /// bet_points / (games × 6)
    pub norm_bet: f64,
}

/// Scores normalized by the per-game maxima, over finished games only.
/// Players without a finished game are left out. Sorted by player id.
pub fn normalized_scores(snapshot: &Snapshot) -> Vec<PlayerPerformance> {
    let mut acc: BTreeMap<PlayerId, (u32, u32, u32, u32)> = BTreeMap::new();
    for record in snapshot
        .games
        .iter()
        .filter(|g| g.game.status == GameStatus::Finished)
    {
        for player in record.game.player_ids {
            let entry = acc.entry(player).or_default();
            entry.0 += 1;
            for round in &record.rounds {
                let (fake, bet) = round.points_of(player);
                entry.1 += 1;
                entry.2 += fake;
                entry.3 += bet;
            }
        }
    }
    acc.into_iter()
        .map(|(player_id, (games, rounds, fake_points, bet_points))| PlayerPerformance {
            player_id,
            alias: snapshot.alias(player_id).unwrap_or_default().to_string(),
            games,
            rounds,
            fake_points,
            bet_points,
            norm_fake: f64::from(fake_points) / f64::from(games * MAX_FAKE_POINTS_PER_GAME),
            norm_bet: f64::from(bet_points) / f64::from(games * MAX_BET_POINTS_PER_GAME),
        })
        .collect()
}
