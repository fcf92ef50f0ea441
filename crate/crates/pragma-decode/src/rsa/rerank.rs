//! The non-incremental baseline: sample a finite utterance set from the
//! literal speaker, then run whole-utterance inference over it.
//!
//! Because inference only sees the sampled set, a useful caption that never
//! enters the set can never be emitted, however informative it would be.
//! The incremental engine has no such restriction; the gap between the two
//! is measured by the containment statistic in `eval`.

use crate::core::{Distribution, PartialCaption, RSAConfig, WorldSet};
use crate::error::{Error, Result};
use crate::rsa::{unroll_beam, SpeakerKind};
use crate::speaker::{prefix_log_prob, ConditionalSequenceModel};

/// A baseline caption with its pragmatic-speaker probability over the
/// sampled utterance set.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedCaption {
    pub caption: String,
    pub s1_prob: f64,
}

/// Run the sample-then-infer baseline for `target`.
///
/// The top `n` literal-beam captions for the target become the utterance
/// set; each item's probabilities over that set are the renormalized
/// chain-rule sequence probabilities; whole-utterance inference with a
/// uniform utterance prior then ranks the set for the target.
pub fn sample_rerank_baseline<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    world: &WorldSet,
    target: usize,
    n: usize,
    alpha: f64,
    config: &RSAConfig,
) -> Result<Vec<RankedCaption>> {
    if n < 1 {
        return Err(Error::InvalidConfig("baseline needs n >= 1".into()));
    }
    let mut beam_config = config.clone();
    beam_config.beam_width = n;
    let hyps = unroll_beam(SpeakerKind::S0, model, world, target, &beam_config, None)?;
    let captions: Vec<PartialCaption> = hyps
        .into_iter()
        .filter(|h| h.caption.ends_with_eos())
        .map(|h| h.caption)
        .collect();
    if captions.is_empty() {
        return Err(Error::EmptyBeam);
    }

    // Per-item utterance distributions over the sampled set, renormalized
    // from log-space sequence probabilities.
    let s0: Vec<Distribution> = world
        .items()
        .iter()
        .map(|item| {
            let logs: Vec<f64> = captions
                .iter()
                .map(|c| prefix_log_prob(model, item, c))
                .collect();
            Distribution::from_log_weights(&logs)
        })
        .collect::<Result<_>>()?;

    // Listener columns with a uniform item prior.
    let n_items = world.len() as f64;
    let l0_target: Vec<f64> = (0..captions.len())
        .map(|u| {
            let weights: Vec<f64> = s0.iter().map(|d| d.get(u) / n_items).collect();
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                0.0
            } else {
                weights[target] / total
            }
        })
        .collect();

    // Speaker over the set: uniform utterance prior, listener term to alpha.
    let weights: Vec<f64> = l0_target.iter().map(|&l| l.powf(alpha)).collect();
    let s1 = Distribution::from_weights(&weights)?;

    let mut ranked: Vec<(usize, RankedCaption)> = captions
        .iter()
        .enumerate()
        .map(|(u, c)| {
            (
                u,
                RankedCaption {
                    caption: c.render(model.alphabet()),
                    s1_prob: s1.get(u),
                },
            )
        })
        .collect();
    // Rank by speaker probability; ties keep literal-beam order.
    ranked.sort_by(|a, b| b.1.s1_prob.total_cmp(&a.1.s1_prob).then(a.0.cmp(&b.0)));
    Ok(ranked.into_iter().map(|(_, rc)| rc).collect())
}
