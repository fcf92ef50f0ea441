//! Literal speakers: the pluggable conditional sequence models the inference
//! engine reasons over.
//!
//! A literal speaker assigns, for a world item and a partial caption, a
//! probability to every next symbol. The engine never looks inside a model;
//! anything implementing [`ConditionalSequenceModel`] plugs in, from exact
//! table doubles used in tests to the attribute-conditioned n-gram models
//! trained on caption corpora.

mod ngram;
mod table;
mod truth;

pub use ngram::{train_ngram, NGramConfig, NGramModel};
pub use table::TableModel;
pub use truth::{red_bus_world, truth_table_s0, TruthTableUtteranceModel};

use crate::core::{Alphabet, Distribution, Item, PartialCaption};
use crate::error::{Error, Result};

/// The literal speaker interface: `P(next symbol | item, caption so far)`.
///
/// Implementations must be deterministic (identical inputs always yield
/// identical outputs) and must return a distribution whose support size
/// equals the alphabet size. START carries zero mass: it is never emitted.
pub trait ConditionalSequenceModel: Sync {
    fn alphabet(&self) -> &Alphabet;

    fn next_symbol_dist(&self, item: &Item, prefix: &PartialCaption) -> Distribution;
}

/// Chain-rule log probability of the emitted symbols of `caption`
/// (everything after START, including EOS if present).
///
/// This is the building block for whole-caption scoring; it accepts
/// unterminated prefixes so truncated captions can still be scored.
pub fn prefix_log_prob<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    item: &Item,
    caption: &PartialCaption,
) -> f64 {
    let mut prefix = PartialCaption::start(model.alphabet());
    let mut log_prob = 0.0;
    for &symbol in caption.emitted() {
        let dist = model.next_symbol_dist(item, &prefix);
        log_prob += dist.get(symbol).ln();
        prefix
            .append(symbol)
            .expect("caption invariants guarantee appendability");
    }
    log_prob
}

/// Total log probability of the model incrementally generating `caption`:
/// the sum of per-step log probabilities under the chain rule.
///
/// The caption must be well formed and end in EOS.
pub fn sequence_prob<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    item: &Item,
    caption: &PartialCaption,
) -> Result<f64> {
    if !caption.ends_with_eos() {
        return Err(Error::MalformedCaption(
            "sequence probability requires an EOS-terminated caption".into(),
        ));
    }
    Ok(prefix_log_prob(model, item, caption))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{Granularity, Item};

    fn alphabet() -> Alphabet {
        Alphabet::new(
            vec![
                "<s>".into(),
                "</s>".into(),
                "a".into(),
                "b".into(),
                "c".into(),
            ],
            0,
            1,
            Granularity::Character,
        )
        .unwrap()
    }

    #[test]
    fn point_mass_chain_has_log_prob_zero() {
        let a = alphabet();
        let item = Item::new("x");
        let mut model = TableModel::new(a.clone());
        // Deterministically spells "ab" then EOS.
        model.set(&item.id, &[0], Distribution::point_mass(5, 2).unwrap());
        model.set(&item.id, &[0, 2], Distribution::point_mass(5, 3).unwrap());
        model.set(&item.id, &[0, 2, 3], Distribution::point_mass(5, 1).unwrap());
        let caption = PartialCaption::complete(&a, "ab").unwrap();
        assert_eq!(sequence_prob(&model, &item, &caption).unwrap(), 0.0);
    }

    #[test]
    fn product_rule() {
        let a = alphabet();
        let item = Item::new("x");
        let mut model = TableModel::new(a.clone());
        model.set(
            &item.id,
            &[0],
            Distribution::from_weights(&[0.0, 0.0, 0.5, 0.5, 0.0]).unwrap(),
        );
        model.set(
            &item.id,
            &[0, 2],
            Distribution::from_weights(&[0.0, 0.25, 0.0, 0.5, 0.25]).unwrap(),
        );
        model.set(
            &item.id,
            &[0, 2, 3],
            Distribution::point_mass(5, 1).unwrap(),
        );
        // Steps: P(a)=0.5, P(b|a)=0.5, P(EOS|ab)=1.0 -> product 0.25.
        let caption = PartialCaption::complete(&a, "ab").unwrap();
        let lp = sequence_prob(&model, &item, &caption).unwrap();
        assert!((lp - (0.5f64 * 0.5 * 1.0).ln()).abs() < 1e-12);

        // A (0.5, 0.25, 1.0) chain multiplies to 1/8.
        let mut chain = TableModel::new(a.clone());
        chain.set(
            &item.id,
            &[0],
            Distribution::from_weights(&[0.0, 0.0, 0.5, 0.5, 0.0]).unwrap(),
        );
        chain.set(
            &item.id,
            &[0, 2],
            Distribution::from_weights(&[0.0, 0.0, 0.0, 0.25, 0.75]).unwrap(),
        );
        chain.set(&item.id, &[0, 2, 3], Distribution::point_mass(5, 1).unwrap());
        let caption = PartialCaption::complete(&a, "ab").unwrap();
        let lp = sequence_prob(&chain, &item, &caption).unwrap();
        assert!((lp - 0.125f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn rejects_unterminated_caption() {
        let a = alphabet();
        let model = TableModel::new(a.clone());
        let caption = PartialCaption::from_content(&a, &[2], false).unwrap();
        assert!(matches!(
            sequence_prob(&model, &Item::new("x"), &caption),
            Err(Error::MalformedCaption(_))
        ));
    }

    #[test]
    fn matches_independent_per_step_queries() {
        let a = alphabet();
        let item = Item::new("x");
        let mut model = TableModel::new(a.clone());
        model.set(
            &item.id,
            &[0],
            Distribution::from_weights(&[0.0, 0.1, 0.3, 0.3, 0.3]).unwrap(),
        );
        model.set(
            &item.id,
            &[0, 4],
            Distribution::from_weights(&[0.0, 0.6, 0.2, 0.1, 0.1]).unwrap(),
        );
        let caption = PartialCaption::complete(&a, "c").unwrap();
        let step1 = model
            .next_symbol_dist(&item, &PartialCaption::start(&a))
            .get(4);
        let step2 = model
            .next_symbol_dist(&item, &PartialCaption::from_content(&a, &[4], false).unwrap())
            .get(1);
        let expected = step1.ln() + step2.ln();
        let got = sequence_prob(&model, &item, &caption).unwrap();
        assert!((got - expected).abs() < 1e-12);
    }
}
