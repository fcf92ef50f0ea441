//! Reference-game worlds: candidate items and their attributes.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate referent: a unique id plus categorical attributes
/// (for example category -> "bus", color -> "red").
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub id: String,
    #[serde(default)]
    pub attributes: BTreeMap<String, String>,
}

impl Item {
    pub fn new(id: impl Into<String>) -> Self {
        Item {
            id: id.into(),
            attributes: BTreeMap::new(),
        }
    }

    pub fn with_attr(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.attributes.insert(name.into(), value.into());
        self
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attributes.get(name).map(String::as_str)
    }
}

/// A list of captioned items: the training data for literal speakers.
pub type Corpus = Vec<(Item, String)>;

/// The shared context of a reference game: an ordered list of candidate
/// items, one of which (by index) is the speaker's private target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorldSet {
    items: Vec<Item>,
}

impl WorldSet {
    pub fn new(items: Vec<Item>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidWorld("world needs at least one item".into()));
        }
        let mut seen = HashSet::new();
        for item in &items {
            if item.id.is_empty() {
                return Err(Error::InvalidWorld("empty item id".into()));
            }
            if !seen.insert(item.id.as_str()) {
                return Err(Error::InvalidWorld(format!("duplicate item id {:?}", item.id)));
            }
        }
        Ok(WorldSet { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn item(&self, index: usize) -> &Item {
        &self.items[index]
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.items.iter().position(|i| i.id == id)
    }
}
