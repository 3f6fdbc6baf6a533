use std::collections::BTreeMap;

use fakeyou_core::model::Phase;
use fakeyou_core::snapshot::Snapshot;
use fakeyou_core::PlayerId;

pub const DEFAULT_MIN_ROUNDS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct LearningSlope {
    pub player_id: PlayerId,
    pub alias: String,
    pub rounds: usize,
    /// Trend of fooling points earned per round.
    pub slope_fake: f64,
    /// Trend of correct-bet points earned per round.
    pub slope_bet: f64,
}

/// Least-squares slope of `y` against x = 1..=n, in one pass with running
/// means and co-moments. `None` below two points.
pub fn ols_slope(y: &[f64]) -> Option<f64> {
    if y.len() < 2 {
        return None;
    }
    let (mut mean_x, mut mean_y, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (i, &yi) in y.iter().enumerate() {
        let n = (i + 1) as f64;
        let x = n;
        let dx = x - mean_x;
        mean_x += dx / n;
        mean_y += (yi - mean_y) / n;
        sxx += dx * (x - mean_x);
        sxy += dx * (yi - mean_y);
    }
    Some(sxy / sxx)
}

/// Per-player slopes of points per round over chronological round index.
/// Counts revealed rounds of games that were not cancelled, ordered by when
/// they were scored. Players with fewer than `min_rounds` rounds are left
/// out. Sorted by player id.
pub fn learning_slopes(snapshot: &Snapshot, min_rounds: usize) -> Vec<LearningSlope> {
    let mut series: BTreeMap<PlayerId, Vec<(u64, u32, u32)>> = BTreeMap::new();
    for record in snapshot.games.iter().filter(|g| !g.is_cancelled()) {
        for round in &record.rounds {
            let Some(seq) = round.revealed_seq.filter(|_| round.phase == Phase::Revealed) else {
                continue;
            };
            for player in record.game.player_ids {
                let (fake, bet) = round.points_of(player);
                series.entry(player).or_default().push((seq, fake, bet));
            }
        }
    }
    series
        .into_iter()
        .filter(|(_, rounds)| rounds.len() >= min_rounds.max(2))
        .map(|(player_id, mut rounds)| {
            rounds.sort_by_key(|r| r.0);
            let fake: Vec<f64> = rounds.iter().map(|r| f64::from(r.1)).collect();
            let bet: Vec<f64> = rounds.iter().map(|r| f64::from(r.2)).collect();
            LearningSlope {
                player_id,
                alias: snapshot.alias(player_id).unwrap_or_default().to_string(),
                rounds: rounds.len(),
                slope_fake: ols_slope(&fake).unwrap_or(0.0),
                slope_bet: ols_slope(&bet).unwrap_or(0.0),
            }
        })
        .collect()
}
