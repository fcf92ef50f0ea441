//! The idealized whole-utterance literal speaker of classic reference games:
//! a truth table over a finite utterance set.

use crate::core::{Distribution, Item};
use crate::error::{Error, Result};

/// A finite utterance set with a boolean truth matrix (utterance x item).
///
/// Every utterance must be true of at least one item and every item must have
/// at least one true utterance.
#[derive(Debug, Clone)]
pub struct TruthTableUtteranceModel {
    utterances: Vec<String>,
    item_ids: Vec<String>,
    truth: Vec<Vec<bool>>,
}

impl TruthTableUtteranceModel {
    pub fn new(
        utterances: Vec<String>,
        item_ids: Vec<String>,
        truth: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if truth.len() != utterances.len() {
            return Err(Error::InvalidWorld(
                "truth matrix must have one row per utterance".into(),
            ));
        }
        for row in &truth {
            if row.len() != item_ids.len() {
                return Err(Error::InvalidWorld(
                    "truth matrix must have one column per item".into(),
                ));
            }
        }
        for (u, row) in truth.iter().enumerate() {
            if !row.iter().any(|&t| t) {
                return Err(Error::InvalidWorld(format!(
                    "utterance {:?} is true of no item",
                    utterances[u]
                )));
            }
        }
        for w in 0..item_ids.len() {
            if !truth.iter().any(|row| row[w]) {
                return Err(Error::InvalidWorld(format!(
                    "item {:?} has no true utterance",
                    item_ids[w]
                )));
            }
        }
        Ok(TruthTableUtteranceModel {
            utterances,
            item_ids,
            truth,
        })
    }

    pub fn utterances(&self) -> &[String] {
        &self.utterances
    }

    pub fn item_ids(&self) -> &[String] {
        &self.item_ids
    }

    pub fn n_utterances(&self) -> usize {
        self.utterances.len()
    }

    pub fn n_items(&self) -> usize {
        self.item_ids.len()
    }

    pub fn is_true(&self, utterance: usize, item: usize) -> bool {
        self.truth[utterance][item]
    }

    pub fn item_index(&self, id: &str) -> Option<usize> {
        self.item_ids.iter().position(|i| i == id)
    }
}

/// The literal speaker of the truth table: uniform over the utterances true
/// of `item`, zero elsewhere.
pub fn truth_table_s0(model: &TruthTableUtteranceModel, item: &Item) -> Result<Distribution> {
    let w = model
        .item_index(&item.id)
        .ok_or_else(|| Error::UnknownItem(item.id.clone()))?;
    let weights: Vec<f64> = (0..model.n_utterances())
        .map(|u| if model.is_true(u, w) { 1.0 } else { 0.0 })
        .collect();
    Distribution::from_weights(&weights)
}

/// The two-item, two-utterance world used throughout the guide: the target
/// is a red bus, the distractor a bus of another color, and the utterance
/// set is `{"bus", "red bus"}`.
pub fn red_bus_world() -> TruthTableUtteranceModel {
    TruthTableUtteranceModel::new(
        vec!["bus".into(), "red bus".into()],
        vec!["target-red-bus".into(), "distractor-bus".into()],
        vec![vec![true, true], vec![true, false]],
    )
    .expect("static fixture is valid")
}
