use rand::seq::SliceRandom;

use crate::error::GameError;
use crate::ids::PlayerId;
use crate::model::{Game, HeadlineOption, OptionSet, Phase, Provenance, Round};
use crate::seed;

/// The viewer's three candidates: the original headline and both opponents'
/// fakes, shuffled by a permutation fixed by (game seed, round, viewer).
pub fn option_set(game: &Game, round: &Round, viewer: PlayerId) -> Result<OptionSet, GameError> {
    if !game.is_member(viewer) {
        return Err(GameError::NotMember);
    }
    if round.phase < Phase::Betting {
        return Err(GameError::WrongPhase);
    }
    let mut options = Vec::with_capacity(3);
    options.push(HeadlineOption {
        text: round.truth.clone(),
        provenance: Provenance::TrueHeadline,
    });
    for author in game.opponents(viewer) {
        let submission = round.submission_of(author).ok_or(GameError::WrongPhase)?;
        options.push(HeadlineOption {
            text: submission.text.clone(),
            provenance: Provenance::FakeOf(author),
        });
    }
    let mut rng = seed::rng_for(&[game.rng_seed, round.round_id.0, viewer.0]);
    options.shuffle(&mut rng);
    Ok(OptionSet {
        round_id: round.round_id,
        viewer_id: viewer,
        options,
    })
}
