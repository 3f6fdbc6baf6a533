use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::GameError;
use crate::ids::PlayerId;
use crate::model::Article;
use crate::state::Ledger;

/// Picks `count` distinct articles for a new game.
///
/// Articles none of `players` has seen are preferred and drawn uniformly.
/// When there are too few of those, the remainder comes from the articles
/// seen by the fewest of the given players, ties broken at random. Exposure
/// itself is recorded when the game-created event is applied.
pub fn select_articles<R: Rng + ?Sized>(
    articles: &[Article],
    ledger: &Ledger,
    count: usize,
    players: &[PlayerId],
    rng: &mut R,
) -> Result<Vec<Article>, GameError> {
    if articles.len() < count {
        return Err(GameError::InsufficientArticles {
            needed: count,
            available: articles.len(),
        });
    }
    let mut candidates: Vec<(usize, &Article)> = articles
        .iter()
        .map(|a| {
            let exposure = players
                .iter()
                .filter(|p| ledger.seen_by(**p).is_some_and(|s| s.contains(&a.article_id)))
                .count();
            (exposure, a)
        })
        .collect();
    candidates.sort_by_key(|(_, a)| a.article_id);
    candidates.shuffle(rng);
    // Stable sort keeps the shuffled order within each exposure level.
    candidates.sort_by_key(|(exposure, _)| *exposure);
    let mut chosen: Vec<Article> = candidates
        .into_iter()
        .take(count)
        .map(|(_, a)| a.clone())
        .collect();
    chosen.shuffle(rng);
    Ok(chosen)
}
