//! Growing symbol sequences: the caption emitted so far during unrolling.

use serde::{Deserialize, Serialize};

use crate::core::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A growing symbol sequence.
///
/// The first element is always START and START appears nowhere else. EOS, if
/// present, is the final element and nothing may follow it. The timestep `t`
/// of the unrolling is the number of symbols appended so far, i.e.
/// `len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialCaption {
    symbol_ids: Vec<usize>,
    eos_id: usize,
    start_id: usize,
}

impl PartialCaption {
    /// The empty caption `[START]`.
    pub fn start(alphabet: &Alphabet) -> Self {
        PartialCaption {
            symbol_ids: vec![alphabet.start_id()],
            eos_id: alphabet.eos_id(),
            start_id: alphabet.start_id(),
        }
    }

    /// Build `[START] + ids` from content symbol ids, optionally terminated.
    pub fn from_content(alphabet: &Alphabet, content: &[usize], terminate: bool) -> Result<Self> {
        let mut pc = PartialCaption::start(alphabet);
        for &id in content {
            pc.append(id)?;
        }
        if terminate {
            pc.append(alphabet.eos_id())?;
        }
        Ok(pc)
    }

    /// Encode a caption string into a terminated `[START] + tokens + [EOS]`
    /// sequence.
    pub fn complete(alphabet: &Alphabet, caption: &str) -> Result<Self> {
        let ids = alphabet.encode(caption)?;
        Self::from_content(alphabet, &ids, true)
    }

    /// Append one symbol id. Rejects any symbol after EOS and rejects START.
    pub fn append(&mut self, symbol_id: usize) -> Result<()> {
        if self.ends_with_eos() {
            return Err(Error::MalformedCaption(
                "cannot append past EOS".into(),
            ));
        }
        if symbol_id == self.start_id {
            return Err(Error::MalformedCaption(
                "START may only appear at the front".into(),
            ));
        }
        self.symbol_ids.push(symbol_id);
        Ok(())
    }

    /// Copy with one more symbol.
    pub fn extended(&self, symbol_id: usize) -> Result<Self> {
        let mut next = self.clone();
        next.append(symbol_id)?;
        Ok(next)
    }

    pub fn symbol_ids(&self) -> &[usize] {
        &self.symbol_ids
    }

    /// Symbols after START (content plus the terminating EOS if present).
    pub fn emitted(&self) -> &[usize] {
        &self.symbol_ids[1..]
    }

    /// Content symbols: everything after START, excluding a final EOS.
    pub fn content(&self) -> &[usize] {
        let end = if self.ends_with_eos() {
            self.symbol_ids.len() - 1
        } else {
            self.symbol_ids.len()
        };
        &self.symbol_ids[1..end]
    }

    pub fn len(&self) -> usize {
        self.symbol_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbol_ids.is_empty()
    }

    /// Timestep of the unrolling: number of appended symbols.
    pub fn timestep(&self) -> usize {
        self.symbol_ids.len() - 1
    }

    pub fn ends_with_eos(&self) -> bool {
        self.symbol_ids.last() == Some(&self.eos_id)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.symbol_ids)
    }
}
