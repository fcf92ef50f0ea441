//! The pragmatic inference engine.
//!
//! One inference runs per emitted symbol: the literal listener scores how
//! well each candidate symbol would shift a listener's belief toward the
//! target, and the pragmatic speaker reweights the literal speaker by that
//! signal raised to the rationality exponent. Unrolling repeats the inference
//! step by step, carrying the listener posterior forward as the next prior.
//!
//! The engine is stateless over immutable models and worlds; concurrent
//! unrollings are safe and deterministic.

mod classic;
mod rerank;
mod unroll;

pub use classic::{classic_rsa, ClassicRsa};
pub use rerank::{sample_rerank_baseline, RankedCaption};
pub use unroll::{trace_caption, unroll_beam, unroll_greedy, Hypothesis, StepTrace};

use serde::{Deserialize, Serialize};

use crate::core::{
    BeliefState, Distribution, PartialCaption, RSAConfig, SpeakerPrior, WorldSet,
};
use crate::error::{Error, Result};
use crate::speaker::ConditionalSequenceModel;

/// Which speaker drives an unrolling: the literal one or the pragmatic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeakerKind {
    S0,
    S1,
}

impl std::fmt::Display for SpeakerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpeakerKind::S0 => write!(f, "s0"),
            SpeakerKind::S1 => write!(f, "s1"),
        }
    }
}

/// Literal-speaker next-symbol distributions for every item of the world at
/// the given prefix. Row `w` is `S0(. | item w, prefix)`.
pub(crate) fn s0_matrix<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    world: &WorldSet,
    prefix: &PartialCaption,
) -> Vec<Distribution> {
    world
        .items()
        .iter()
        .map(|item| model.next_symbol_dist(item, prefix))
        .collect()
}

fn check_prior(world: &WorldSet, prior: &BeliefState) -> Result<()> {
    if prior.len() != world.len() {
        return Err(Error::SupportMismatch {
            left: prior.len(),
            right: world.len(),
        });
    }
    Ok(())
}

pub(crate) fn l0_from_matrix(
    matrix: &[Distribution],
    prior: &BeliefState,
    symbol: usize,
    floor: f64,
) -> Result<BeliefState> {
    let weights: Vec<f64> = matrix
        .iter()
        .zip(prior.dist().mass())
        .map(|(row, &p)| row.get(symbol) * p)
        .collect();
    Ok(BeliefState::new(Distribution::from_weights_floored(
        &weights, floor,
    )?))
}

pub(crate) fn l1_from_matrix(
    matrix: &[Distribution],
    prior: &BeliefState,
    symbol: usize,
    floor: f64,
) -> Result<BeliefState> {
    let l0 = l0_from_matrix(matrix, prior, symbol, floor)?;
    let weights: Vec<f64> = matrix
        .iter()
        .zip(l0.dist().mass())
        .map(|(row, &p)| row.get(symbol) * p)
        .collect();
    Ok(BeliefState::new(Distribution::from_weights_floored(
        &weights, floor,
    )?))
}

pub(crate) fn s1_from_matrix(
    matrix: &[Distribution],
    target: usize,
    prior: &BeliefState,
    base: &Distribution,
    alpha: f64,
    floor: f64,
) -> Result<Distribution> {
    // Rationality off: the pragmatic speaker is exactly the base speaker.
    if alpha == 0.0 {
        return Ok(base.clone());
    }
    let n_symbols = base.len();
    let mut weights = Vec::with_capacity(n_symbols);
    for symbol in 0..n_symbols {
        let listener = l0_from_matrix(matrix, prior, symbol, floor)?;
        weights.push(base.get(symbol) * listener.get(target).powf(alpha));
    }
    Distribution::from_weights_floored(&weights, floor)
}

/// Literal-listener update: `posterior(w) proportional to
/// S0(symbol | w, prefix) * prior(w)`, floored then normalized.
pub fn l0_step<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    world: &WorldSet,
    prefix: &PartialCaption,
    prior: &BeliefState,
    symbol: usize,
    floor: f64,
) -> Result<BeliefState> {
    check_prior(world, prior)?;
    let matrix = s0_matrix(model, world, prefix);
    l0_from_matrix(&matrix, prior, symbol, floor)
}

/// Pragmatic-listener update: the literal posterior multiplied once more by
/// the literal-speaker probability of the symbol. No rationality exponent
/// applies here.
pub fn l1_step<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    world: &WorldSet,
    prefix: &PartialCaption,
    prior: &BeliefState,
    symbol: usize,
    floor: f64,
) -> Result<BeliefState> {
    check_prior(world, prior)?;
    let matrix = s0_matrix(model, world, prefix);
    l1_from_matrix(&matrix, prior, symbol, floor)
}

/// Pragmatic-speaker step: a distribution over next symbols proportional to
/// `base(u) * L0(target | u, prior, prefix)^alpha`.
///
/// The base factor is the literal speaker's own distribution for the target
/// ([`SpeakerPrior::S0Constrained`]) or an item-independent language model
/// ([`SpeakerPrior::ExternalLm`], which requires `lm`).
pub fn s1_step<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    world: &WorldSet,
    target: usize,
    prefix: &PartialCaption,
    prior: &BeliefState,
    config: &RSAConfig,
    lm: Option<&dyn ConditionalSequenceModel>,
) -> Result<Distribution> {
    check_prior(world, prior)?;
    if target >= world.len() {
        return Err(Error::InvalidWorld(format!(
            "target index {} out of range for {} items",
            target,
            world.len()
        )));
    }
    let matrix = s0_matrix(model, world, prefix);
    let base = match config.speaker_prior {
        SpeakerPrior::S0Constrained => matrix[target].clone(),
        SpeakerPrior::ExternalLm => {
            let lm = lm.ok_or(Error::MissingLm)?;
            lm.next_symbol_dist(world.item(target), prefix)
        }
    };
    s1_from_matrix(&matrix, target, prior, &base, config.alpha, config.epsilon_floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{Alphabet, Granularity, Item};
    use crate::speaker::TableModel;

    const FLOOR: f64 = 1e-12;

    /// The red-bus world with whole utterances treated as single symbols.
    fn bus_symbol_world() -> (TableModel, WorldSet, Alphabet) {
        let alphabet = Alphabet::new(
            vec![
                "<s>".into(),
                "</s>".into(),
                "bus".into(),
                "red bus".into(),
            ],
            0,
            1,
            Granularity::Word,
        )
        .unwrap();
        let world = WorldSet::new(vec![
            Item::new("wa").with_attr("color", "red"),
            Item::new("wb").with_attr("color", "green"),
        ])
        .unwrap();
        let mut model = TableModel::new(alphabet.clone());
        model.set(
            "wa",
            &[0],
            Distribution::from_weights(&[0.0, 0.0, 0.5, 0.5]).unwrap(),
        );
        model.set(
            "wb",
            &[0],
            Distribution::from_weights(&[0.0, 0.0, 1.0, 0.0]).unwrap(),
        );
        (model, world, alphabet)
    }

    #[test]
    fn l0_step_bus_example() {
        let (model, world, alphabet) = bus_symbol_world();
        let prefix = PartialCaption::start(&alphabet);
        let prior = BeliefState::uniform(2).unwrap();
        let post = l0_step(&model, &world, &prefix, &prior, 2, FLOOR).unwrap();
        assert!((post.get(0) - 1.0 / 3.0).abs() < 1e-9);
        assert!((post.get(1) - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn l0_step_uninformative_returns_prior() {
        let alphabet = Alphabet::new(
            vec!["<s>".into(), "</s>".into(), "x".into()],
            0,
            1,
            Granularity::Word,
        )
        .unwrap();
        let world = WorldSet::new(vec![Item::new("a"), Item::new("b")]).unwrap();
        let mut model = TableModel::new(alphabet.clone());
        let row = Distribution::from_weights(&[0.0, 0.3, 0.7]).unwrap();
        model.set("a", &[0], row.clone());
        model.set("b", &[0], row);
        let prior = BeliefState::new(Distribution::from_weights(&[0.9, 0.1]).unwrap());
        let prefix = PartialCaption::start(&alphabet);
        let post = l0_step(&model, &world, &prefix, &prior, 2, FLOOR).unwrap();
        assert!(post.dist().max_abs_diff(prior.dist()) <= 10.0 * FLOOR);
    }

    #[test]
    fn l0_step_three_item_arithmetic() {
        // Hand-normalized products: (0.6, 0.3, 0.1) x (0.5, 0.25, 0.25)
        // = (0.300, 0.075, 0.025), total 0.4.
        let alphabet = Alphabet::new(
            vec!["<s>".into(), "</s>".into(), "x".into()],
            0,
            1,
            Granularity::Word,
        )
        .unwrap();
        let world =
            WorldSet::new(vec![Item::new("a"), Item::new("b"), Item::new("c")]).unwrap();
        let mut model = TableModel::new(alphabet.clone());
        for (id, p) in [("a", 0.6), ("b", 0.3), ("c", 0.1)] {
            model.set(
                id,
                &[0],
                Distribution::from_weights(&[0.0, 1.0 - p, p]).unwrap(),
            );
        }
        let prior = BeliefState::new(Distribution::from_weights(&[0.5, 0.25, 0.25]).unwrap());
        let prefix = PartialCaption::start(&alphabet);
        // symbol id 2 carries the probabilities above
        let post = l0_step(&model, &world, &prefix, &prior, 2, FLOOR).unwrap();
        assert!((post.get(0) - 0.75).abs() < 1e-9);
        assert!((post.get(1) - 0.1875).abs() < 1e-9);
        assert!((post.get(2) - 0.0625).abs() < 1e-9);
    }

    #[test]
    fn s1_step_alpha_zero_is_base() {
        let (model, world, alphabet) = bus_symbol_world();
        let prefix = PartialCaption::start(&alphabet);
        let prior = BeliefState::uniform(2).unwrap();
        let cfg = RSAConfig::default().with_alpha(0.0);
        let out = s1_step(&model, &world, 0, &prefix, &prior, &cfg, None).unwrap();
        let base = model.next_symbol_dist(world.item(0), &prefix);
        assert!(out.max_abs_diff(&base) < 1e-12);
    }

    #[test]
    fn s1_step_bus_example() {
        let (model, world, alphabet) = bus_symbol_world();
        let prefix = PartialCaption::start(&alphabet);
        let prior = BeliefState::uniform(2).unwrap();
        let cfg = RSAConfig::default().with_alpha(1.0);
        let out = s1_step(&model, &world, 0, &prefix, &prior, &cfg, None).unwrap();
        assert!((out.get(2) - 0.25).abs() < 1e-9, "bus: {}", out.get(2));
        assert!((out.get(3) - 0.75).abs() < 1e-9, "red bus: {}", out.get(3));
    }

    #[test]
    fn s1_step_brute_force_oracle() {
        // 3 items, 4 symbols, alpha = 5; the oracle recomputes every listener
        // column by explicit enumeration and renormalizes by hand.
        let alphabet = Alphabet::new(
            vec!["<s>".into(), "</s>".into(), "p".into(), "q".into()],
            0,
            1,
            Granularity::Word,
        )
        .unwrap();
        let world =
            WorldSet::new(vec![Item::new("a"), Item::new("b"), Item::new("c")]).unwrap();
        let rows = [
            [0.0, 0.1, 0.6, 0.3],
            [0.0, 0.4, 0.2, 0.4],
            [0.0, 0.25, 0.25, 0.5],
        ];
        let mut model = TableModel::new(alphabet.clone());
        for (id, row) in ["a", "b", "c"].iter().zip(rows.iter()) {
            model.set(id, &[0], Distribution::from_weights(row).unwrap());
        }
        let prior = BeliefState::uniform(3).unwrap();
        let cfg = RSAConfig::default().with_alpha(5.0);
        let prefix = PartialCaption::start(&alphabet);
        let target = 1;
        let got = s1_step(&model, &world, target, &prefix, &prior, &cfg, None).unwrap();

        let mut expected = [0.0f64; 4];
        for sym in 0..4 {
            let col: Vec<f64> = (0..3)
                .map(|w| (rows[w][sym] * (1.0 / 3.0)).max(FLOOR))
                .collect();
            let total: f64 = col.iter().sum();
            let listener_target = col[target] / total;
            expected[sym] = (rows[target][sym] * listener_target.powi(5)).max(FLOOR);
        }
        let total: f64 = expected.iter().sum();
        for (sym, e) in expected.iter().enumerate() {
            assert!(
                (got.get(sym) - e / total).abs() < 1e-12,
                "symbol {sym}: {} vs {}",
                got.get(sym),
                e / total
            );
        }
    }

    #[test]
    fn s1_step_missing_lm_errors() {
        let (model, world, alphabet) = bus_symbol_world();
        let prefix = PartialCaption::start(&alphabet);
        let prior = BeliefState::uniform(2).unwrap();
        let cfg = RSAConfig {
            speaker_prior: SpeakerPrior::ExternalLm,
            ..RSAConfig::default()
        };
        assert!(matches!(
            s1_step(&model, &world, 0, &prefix, &prior, &cfg, None),
            Err(Error::MissingLm)
        ));
    }

    #[test]
    fn l1_step_uninformative_returns_prior() {
        let alphabet = Alphabet::new(
            vec!["<s>".into(), "</s>".into(), "x".into()],
            0,
            1,
            Granularity::Word,
        )
        .unwrap();
        let world = WorldSet::new(vec![Item::new("a"), Item::new("b")]).unwrap();
        let mut model = TableModel::new(alphabet.clone());
        let row = Distribution::from_weights(&[0.0, 0.5, 0.5]).unwrap();
        model.set("a", &[0], row.clone());
        model.set("b", &[0], row);
        let prior = BeliefState::new(Distribution::from_weights(&[0.3, 0.7]).unwrap());
        let prefix = PartialCaption::start(&alphabet);
        let post = l1_step(&model, &world, &prefix, &prior, 2, FLOOR).unwrap();
        assert!(post.dist().max_abs_diff(prior.dist()) <= 10.0 * FLOOR);
    }

    #[test]
    fn l1_step_squares_the_evidence() {
        // Two items, uniform prior, S0 probs p and q: the pragmatic listener
        // lands on p^2 / (p^2 + q^2). With p=0.8, q=0.2 that is 16/17.
        let alphabet = Alphabet::new(
            vec!["<s>".into(), "</s>".into(), "x".into()],
            0,
            1,
            Granularity::Word,
        )
        .unwrap();
        let world = WorldSet::new(vec![Item::new("a"), Item::new("b")]).unwrap();
        let mut model = TableModel::new(alphabet.clone());
        model.set("a", &[0], Distribution::from_weights(&[0.0, 0.2, 0.8]).unwrap());
        model.set("b", &[0], Distribution::from_weights(&[0.0, 0.8, 0.2]).unwrap());
        let prior = BeliefState::uniform(2).unwrap();
        let prefix = PartialCaption::start(&alphabet);
        let post = l1_step(&model, &world, &prefix, &prior, 2, FLOOR).unwrap();
        assert!((post.get(0) - 16.0 / 17.0).abs() < 1e-9);
    }

    #[test]
    fn l1_step_falsified_distractor() {
        let (model, world, alphabet) = bus_symbol_world();
        let prefix = PartialCaption::start(&alphabet);
        let prior = BeliefState::uniform(2).unwrap();
        let post = l1_step(&model, &world, &prefix, &prior, 3, FLOOR).unwrap();
        assert!(post.get(0) >= 1.0 - 10.0 * FLOOR);
    }
}
