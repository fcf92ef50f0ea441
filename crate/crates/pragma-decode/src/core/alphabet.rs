//! Ordered symbol sets with START and EOS sentinels.

use std::collections::BTreeSet;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symbol granularity of an alphabet: single characters or whole words.
///
/// Character alphabets stay small (tens of symbols) no matter how rich the
/// caption language is; word alphabets grow with the vocabulary. The per-step
/// inference cost scales with the alphabet size, which is why the two modes
/// are benchmarked against each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    Character,
    Word,
}

impl std::fmt::Display for Granularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Granularity::Character => write!(f, "char"),
            Granularity::Word => write!(f, "word"),
        }
    }
}

pub const START_TOKEN: &str = "<s>";
pub const EOS_TOKEN: &str = "</s>";

/// An ordered set of distinct token strings with START and EOS sentinels.
///
/// Symbol ids are indices into the ordered list. START is never emitted as a
/// caption symbol; EOS terminates captions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
    start_id: usize,
    eos_id: usize,
    granularity: Granularity,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new(
        symbols: Vec<String>,
        start_id: usize,
        eos_id: usize,
        granularity: Granularity,
    ) -> Result<Self> {
        if symbols.len() < 3 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 3 symbols (START, EOS, one content symbol), got {}",
                symbols.len()
            )));
        }
        if start_id >= symbols.len() || eos_id >= symbols.len() {
            return Err(Error::InvalidAlphabet("sentinel index out of range".into()));
        }
        if start_id == eos_id {
            return Err(Error::InvalidAlphabet("START and EOS must differ".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet {
            symbols,
            start_id,
            eos_id,
            granularity,
            index,
        })
    }

    /// Build a character alphabet from a caption corpus: the distinct Unicode
    /// scalar values of the lowercased captions (space included), sorted, with
    /// sentinels at ids 0 and 1.
    pub fn char_from_corpus<'a, I: IntoIterator<Item = &'a str>>(captions: I) -> Result<Self> {
        let mut chars = BTreeSet::new();
        for caption in captions {
            for ch in caption.to_lowercase().chars() {
                chars.insert(ch);
            }
        }
        let mut symbols = vec![START_TOKEN.to_string(), EOS_TOKEN.to_string()];
        symbols.extend(chars.into_iter().map(|c| c.to_string()));
        Alphabet::new(symbols, 0, 1, Granularity::Character)
    }

    /// Build a word alphabet from a caption corpus: distinct lowercased
    /// whitespace-separated tokens, sorted, with sentinels at ids 0 and 1.
    pub fn word_from_corpus<'a, I: IntoIterator<Item = &'a str>>(captions: I) -> Result<Self> {
        let mut words = BTreeSet::new();
        for caption in captions {
            for tok in caption.to_lowercase().split_whitespace() {
                words.insert(tok.to_string());
            }
        }
        let mut symbols = vec![START_TOKEN.to_string(), EOS_TOKEN.to_string()];
        symbols.extend(words);
        Alphabet::new(symbols, 0, 1, Granularity::Word)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn start_id(&self) -> usize {
        self.start_id
    }

    pub fn eos_id(&self) -> usize {
        self.eos_id
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn symbol(&self, id: usize) -> &str {
        &self.symbols[id]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn id_of(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    /// Tokenize a caption string into content symbol ids (no sentinels).
    ///
    /// Character mode splits the lowercased caption into Unicode scalar
    /// values; word mode splits on whitespace after lowercasing.
    pub fn encode(&self, caption: &str) -> Result<Vec<usize>> {
        let lowered = caption.to_lowercase();
        let mut ids = Vec::new();
        match self.granularity {
            Granularity::Character => {
                for ch in lowered.chars() {
                    let tok = ch.to_string();
                    let id = self
                        .id_of(&tok)
                        .ok_or_else(|| Error::UnknownSymbol(tok.clone()))?;
                    ids.push(id);
                }
            }
            Granularity::Word => {
                for tok in lowered.split_whitespace() {
                    let id = self
                        .id_of(tok)
                        .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))?;
                    ids.push(id);
                }
            }
        }
        Ok(ids)
    }

    /// Render content symbol ids back into a caption string, skipping
    /// sentinels. Character mode concatenates; word mode joins with spaces.
    pub fn render(&self, ids: &[usize]) -> String {
        let content: Vec<&str> = ids
            .iter()
            .filter(|&&id| id != self.start_id && id != self.eos_id)
            .map(|&id| self.symbol(id))
            .collect();
        match self.granularity {
            Granularity::Character => content.concat(),
            Granularity::Word => content.join(" "),
        }
    }
}

// The symbol index is rebuilt after deserialization.
impl Alphabet {
    pub(crate) fn rebuild_index(&mut self) {
        self.index = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
    }
}
