//! Exact-arithmetic test double for a literal speaker.

use std::collections::HashMap;

use crate::core::{Alphabet, Distribution, Item, PartialCaption};
use crate::speaker::ConditionalSequenceModel;

/// A literal speaker backed by an explicit `(item id, prefix) -> distribution`
/// map. Lookups are total: unlisted prefixes fall back to a point mass on
/// EOS, so every unrolling terminates.
#[derive(Debug, Clone)]
pub struct TableModel {
    alphabet: Alphabet,
    rows: HashMap<(String, Vec<usize>), Distribution>,
    default: Distribution,
}

impl TableModel {
    pub fn new(alphabet: Alphabet) -> Self {
        let default = Distribution::point_mass(alphabet.len(), alphabet.eos_id())
            .expect("alphabet has at least 3 symbols");
        TableModel {
            alphabet,
            rows: HashMap::new(),
            default,
        }
    }

    /// Register the next-symbol distribution for `(item_id, prefix)`.
    /// The prefix is given as full symbol ids including the leading START.
    pub fn set(&mut self, item_id: &str, prefix: &[usize], dist: Distribution) {
        assert_eq!(
            dist.len(),
            self.alphabet.len(),
            "distribution support must match the alphabet"
        );
        self.rows
            .insert((item_id.to_string(), prefix.to_vec()), dist);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }
}

impl ConditionalSequenceModel for TableModel {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn next_symbol_dist(&self, item: &Item, prefix: &PartialCaption) -> Distribution {
        self.rows
            .get(&(item.id.clone(), prefix.symbol_ids().to_vec()))
            .unwrap_or(&self.default)
            .clone()
    }
}
