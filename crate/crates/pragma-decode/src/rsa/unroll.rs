//! Greedy and beam unrolling with belief carrying.

use serde::Serialize;

use crate::core::{
    BeliefState, BeliefUpdate, Distribution, PartialCaption, PriorMode, RSAConfig, SpeakerPrior,
    WorldSet,
};
use crate::error::{Error, Result};
use crate::rsa::{l0_from_matrix, l1_from_matrix, s0_matrix, s1_from_matrix, SpeakerKind};
use crate::speaker::ConditionalSequenceModel;

/// One element of a beam. Each hypothesis carries its own belief state,
/// because the carried prior depends on the symbols that particular
/// hypothesis has emitted.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub caption: PartialCaption,
    /// Sum of per-step log speaker probabilities of the chosen symbols.
    pub cumulative_log_score: f64,
    pub belief: BeliefState,
    /// True when the caption hit the length cap without emitting EOS.
    pub truncated: bool,
}

impl Hypothesis {
    pub fn finished(&self) -> bool {
        self.caption.ends_with_eos() || self.truncated
    }
}

/// One record of an unrolling trace: the state of a single symbol decision.
#[derive(Debug, Clone, Serialize)]
pub struct StepTrace {
    pub t: usize,
    pub prefix_ids: Vec<usize>,
    pub prefix_text: String,
    pub chosen_id: usize,
    pub chosen_symbol: String,
    pub speaker_dist: Vec<f64>,
    pub belief_before: Vec<f64>,
    pub belief_after: Vec<f64>,
}

fn check_unroll_args(
    kind: SpeakerKind,
    world: &WorldSet,
    target: usize,
    config: &RSAConfig,
    lm: Option<&dyn ConditionalSequenceModel>,
) -> Result<()> {
    config.validate()?;
    if target >= world.len() {
        return Err(Error::InvalidWorld(format!(
            "target index {} out of range for {} items",
            target,
            world.len()
        )));
    }
    if kind == SpeakerKind::S1 && world.len() < 2 {
        return Err(Error::InvalidWorld(
            "pragmatic unrolling needs at least 2 items".into(),
        ));
    }
    if kind == SpeakerKind::S1 && config.speaker_prior == SpeakerPrior::ExternalLm && lm.is_none()
    {
        return Err(Error::MissingLm);
    }
    Ok(())
}

/// The per-step speaker distribution for one hypothesis.
fn speaker_dist(
    kind: SpeakerKind,
    matrix: &[Distribution],
    target: usize,
    belief: &BeliefState,
    config: &RSAConfig,
    base_override: Option<Distribution>,
) -> Result<Distribution> {
    match kind {
        SpeakerKind::S0 => Ok(matrix[target].clone()),
        SpeakerKind::S1 => {
            let base = match base_override {
                Some(b) => b,
                None => matrix[target].clone(),
            };
            s1_from_matrix(matrix, target, belief, &base, config.alpha, config.epsilon_floor)
        }
    }
}

fn lm_base(
    config: &RSAConfig,
    lm: Option<&dyn ConditionalSequenceModel>,
    world: &WorldSet,
    target: usize,
    prefix: &PartialCaption,
) -> Result<Option<Distribution>> {
    match config.speaker_prior {
        SpeakerPrior::S0Constrained => Ok(None),
        SpeakerPrior::ExternalLm => {
            let lm = lm.ok_or(Error::MissingLm)?;
            Ok(Some(lm.next_symbol_dist(world.item(target), prefix)))
        }
    }
}

/// The carried belief after a symbol has been emitted.
fn next_belief(
    matrix: &[Distribution],
    belief: &BeliefState,
    symbol: usize,
    config: &RSAConfig,
) -> Result<BeliefState> {
    match config.prior_mode {
        PriorMode::UniformReset => BeliefState::uniform(belief.len()),
        PriorMode::Carried => match config.belief_update {
            BeliefUpdate::L1 => l1_from_matrix(matrix, belief, symbol, config.epsilon_floor),
            BeliefUpdate::L0 => l0_from_matrix(matrix, belief, symbol, config.epsilon_floor),
        },
    }
}

/// Greedily unroll a caption: start from `[START]` and a uniform belief, pick
/// the argmax speaker symbol at every step (ties break toward the lowest
/// symbol id), update the belief on the chosen symbol, and stop at EOS or the
/// length cap. Returns the caption and the per-step trace.
pub fn unroll_greedy<M: ConditionalSequenceModel + ?Sized>(
    kind: SpeakerKind,
    model: &M,
    world: &WorldSet,
    target: usize,
    config: &RSAConfig,
    lm: Option<&dyn ConditionalSequenceModel>,
) -> Result<(PartialCaption, Vec<StepTrace>)> {
    check_unroll_args(kind, world, target, config, lm)?;
    let alphabet = model.alphabet();
    let start = alphabet.start_id();
    let eos = alphabet.eos_id();
    let mut prefix = PartialCaption::start(alphabet);
    let mut belief = BeliefState::uniform(world.len())?;
    let mut trace = Vec::new();

    loop {
        let matrix = s0_matrix(model, world, &prefix);
        let base = lm_base(config, lm, world, target, &prefix)?;
        let dist = speaker_dist(kind, &matrix, target, &belief, config, base)?;
        let chosen = argmax_emittable(&dist, start);
        let belief_before = belief.clone();
        belief = next_belief(&matrix, &belief, chosen, config)?;
        trace.push(StepTrace {
            t: prefix.timestep(),
            prefix_ids: prefix.symbol_ids().to_vec(),
            prefix_text: prefix.render(alphabet),
            chosen_id: chosen,
            chosen_symbol: alphabet.symbol(chosen).to_string(),
            speaker_dist: dist.mass().to_vec(),
            belief_before: belief_before.dist().mass().to_vec(),
            belief_after: belief.dist().mass().to_vec(),
        });
        prefix.append(chosen)?;
        if chosen == eos || prefix.content().len() >= config.max_length {
            return Ok((prefix, trace));
        }
    }
}

/// Argmax over emittable symbols (START excluded); ties break low.
fn argmax_emittable(dist: &Distribution, start_id: usize) -> usize {
    let mut best: Option<usize> = None;
    for sym in 0..dist.len() {
        if sym == start_id {
            continue;
        }
        match best {
            None => best = Some(sym),
            Some(b) if dist.get(sym) > dist.get(b) => best = Some(sym),
            _ => {}
        }
    }
    best.expect("alphabet has emittable symbols")
}

/// Width-B beam over the per-step speaker distribution.
///
/// Hypotheses are scored by the sum of log speaker probabilities of their
/// chosen symbols (no length normalization unless configured). Finished
/// hypotheses are frozen. Returns up to `beam_width` finished hypotheses,
/// best score first; score ties order by caption text.
pub fn unroll_beam<M: ConditionalSequenceModel + ?Sized>(
    kind: SpeakerKind,
    model: &M,
    world: &WorldSet,
    target: usize,
    config: &RSAConfig,
    lm: Option<&dyn ConditionalSequenceModel>,
) -> Result<Vec<Hypothesis>> {
    check_unroll_args(kind, world, target, config, lm)?;
    let alphabet = model.alphabet();
    let start = alphabet.start_id();
    let eos = alphabet.eos_id();
    let width = config.beam_width;

    let mut active = vec![Hypothesis {
        caption: PartialCaption::start(alphabet),
        cumulative_log_score: 0.0,
        belief: BeliefState::uniform(world.len())?,
        truncated: false,
    }];
    let mut finished: Vec<Hypothesis> = Vec::new();

    while !active.is_empty() {
        // One matrix and one speaker distribution per active hypothesis;
        // children reuse the parent's matrix for their belief update.
        let mut expansions = Vec::with_capacity(active.len());
        for hyp in &active {
            let matrix = s0_matrix(model, world, &hyp.caption);
            let base = lm_base(config, lm, world, target, &hyp.caption)?;
            let dist = speaker_dist(kind, &matrix, target, &hyp.belief, config, base)?;
            expansions.push((matrix, dist));
        }

        // (score, parent, symbol), impossible continuations skipped.
        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for (pi, (hyp, (_, dist))) in active.iter().zip(&expansions).enumerate() {
            for sym in 0..dist.len() {
                if sym == start {
                    continue;
                }
                let p = dist.get(sym);
                if p > 0.0 {
                    candidates.push((hyp.cumulative_log_score + p.ln(), pi, sym));
                }
            }
        }
        candidates.sort_unstable_by(|a, b| {
            b.0.total_cmp(&a.0)
                .then(a.1.cmp(&b.1))
                .then(a.2.cmp(&b.2))
        });

        // Select exactly the best `width` candidates of the round. Selected
        // EOS candidates freeze; the rest continue. Unselected candidates
        // die, so width 1 walks the greedy path exactly.
        let mut next_active: Vec<Hypothesis> = Vec::with_capacity(width);
        for &(score, pi, sym) in candidates.iter().take(width) {
            let is_eos = sym == eos;
            let parent = &active[pi];
            let (matrix, _) = &expansions[pi];
            let belief = next_belief(matrix, &parent.belief, sym, config)?;
            let caption = parent.caption.extended(sym)?;
            if is_eos {
                finished.push(Hypothesis {
                    caption,
                    cumulative_log_score: score,
                    belief,
                    truncated: false,
                });
            } else if caption.content().len() >= config.max_length {
                finished.push(Hypothesis {
                    caption,
                    cumulative_log_score: score,
                    belief,
                    truncated: true,
                });
            } else {
                next_active.push(Hypothesis {
                    caption,
                    cumulative_log_score: score,
                    belief,
                    truncated: false,
                });
            }
        }
        active = next_active;
    }

    if finished.is_empty() {
        return Err(Error::EmptyBeam);
    }
    let rank = |h: &Hypothesis| {
        if config.length_normalize {
            h.cumulative_log_score / h.caption.emitted().len().max(1) as f64
        } else {
            h.cumulative_log_score
        }
    };
    finished.sort_by(|a, b| {
        rank(b)
            .total_cmp(&rank(a))
            .then_with(|| a.caption.render(alphabet).cmp(&b.caption.render(alphabet)))
            .then_with(|| a.caption.symbol_ids().cmp(b.caption.symbol_ids()))
    });
    finished.truncate(width);
    Ok(finished)
}

/// Replay a fixed caption through the per-step inference, recording the same
/// trace an unrolling would have produced along that path.
pub fn trace_caption<M: ConditionalSequenceModel + ?Sized>(
    kind: SpeakerKind,
    model: &M,
    world: &WorldSet,
    target: usize,
    config: &RSAConfig,
    lm: Option<&dyn ConditionalSequenceModel>,
    caption: &PartialCaption,
) -> Result<Vec<StepTrace>> {
    check_unroll_args(kind, world, target, config, lm)?;
    let alphabet = model.alphabet();
    let mut prefix = PartialCaption::start(alphabet);
    let mut belief = BeliefState::uniform(world.len())?;
    let mut trace = Vec::new();
    for &symbol in caption.emitted() {
        let matrix = s0_matrix(model, world, &prefix);
        let base = lm_base(config, lm, world, target, &prefix)?;
        let dist = speaker_dist(kind, &matrix, target, &belief, config, base)?;
        let belief_before = belief.clone();
        belief = next_belief(&matrix, &belief, symbol, config)?;
        trace.push(StepTrace {
            t: prefix.timestep(),
            prefix_ids: prefix.symbol_ids().to_vec(),
            prefix_text: prefix.render(alphabet),
            chosen_id: symbol,
            chosen_symbol: alphabet.symbol(symbol).to_string(),
            speaker_dist: dist.mass().to_vec(),
            belief_before: belief_before.dist().mass().to_vec(),
            belief_after: belief.dist().mass().to_vec(),
        });
        prefix.append(symbol)?;
    }
    Ok(trace)
}
