//! Whole-utterance reference-game inference over a finite utterance set.

use crate::core::{BeliefState, Distribution, WorldSet};
use crate::error::{Error, Result};
use crate::speaker::{truth_table_s0, TruthTableUtteranceModel};

/// Output of [`classic_rsa`]: the listener matrix (one distribution over
/// items per utterance) and the speaker matrix (one distribution over
/// utterances per item).
#[derive(Debug, Clone)]
pub struct ClassicRsa {
    pub l0: Vec<Distribution>,
    pub s1: Vec<Distribution>,
}

/// Utterance-level inference over a truth table.
///
/// The listener applies Bayes' rule to the literal speaker and the item
/// prior; the speaker reweights a uniform utterance prior by the listener
/// probability of the item, raised to `alpha`.
pub fn classic_rsa(
    model: &TruthTableUtteranceModel,
    world: &WorldSet,
    prior: &BeliefState,
    alpha: f64,
) -> Result<ClassicRsa> {
    if prior.len() != world.len() {
        return Err(Error::SupportMismatch {
            left: prior.len(),
            right: world.len(),
        });
    }
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    // Literal speaker rows aligned to the world's item order.
    let s0: Vec<Distribution> = world
        .items()
        .iter()
        .map(|item| truth_table_s0(model, item))
        .collect::<Result<_>>()?;

    let n_utt = model.n_utterances();
    let n_items = world.len();

    let l0: Vec<Distribution> = (0..n_utt)
        .map(|u| {
            let weights: Vec<f64> = (0..n_items)
                .map(|w| s0[w].get(u) * prior.get(w))
                .collect();
            Distribution::from_weights(&weights)
        })
        .collect::<Result<_>>()?;

    // Uniform utterance prior: the speaker weights reduce to listener mass.
    let s1: Vec<Distribution> = (0..n_items)
        .map(|w| {
            let weights: Vec<f64> = (0..n_utt).map(|u| l0[u].get(w).powf(alpha)).collect();
            Distribution::from_weights(&weights)
        })
        .collect::<Result<_>>()?;

    Ok(ClassicRsa { l0, s1 })
}
