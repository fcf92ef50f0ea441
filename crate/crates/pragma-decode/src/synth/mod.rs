//! Synthetic reference-game worlds: attributed items, template-grammar
//! caption corpora, and test-set cluster construction.
//!
//! Generation is a pure function of (schema or grammar, seed); identical
//! inputs reproduce identical outputs byte for byte. The generator is the
//! pinned [`SplitMix64`].

mod rng;

pub use rng::SplitMix64;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::core::Item;
use crate::eval::Cluster;

/// Ordered attribute schema: each attribute has a name and at least two
/// categorical values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeSchema {
    pub attributes: Vec<AttributeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeSpec {
    pub name: String,
    pub values: Vec<String>,
}

impl AttributeSchema {
    pub fn new(attributes: Vec<AttributeSpec>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::InvalidConfig("schema needs >= 1 attribute".into()));
        }
        for attr in &attributes {
            if attr.values.len() < 2 {
                return Err(Error::InvalidConfig(format!(
                    "attribute {:?} needs >= 2 values",
                    attr.name
                )));
            }
        }
        Ok(AttributeSchema { attributes })
    }

    /// The default desk-scale schema: 10 categories and enough color, size,
    /// and pose values that the space of plausible captions within a cluster
    /// far exceeds what a 50-caption literal beam can cover. Within a
    /// same-category cluster a bare category caption is ambiguous while the
    /// other attributes can disambiguate.
    pub fn default_schema() -> Self {
        AttributeSchema {
            attributes: vec![
                AttributeSpec {
                    name: "category".into(),
                    values: [
                        "bus", "car", "cat", "dog", "bird", "boat", "tree", "house", "horse",
                        "bike",
                    ]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                },
                AttributeSpec {
                    name: "color".into(),
                    values: [
                        "red", "blue", "green", "yellow", "black", "white", "orange", "purple",
                    ]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                },
                AttributeSpec {
                    name: "size".into(),
                    values: ["small", "big", "huge"]
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                },
                AttributeSpec {
                    name: "pose".into(),
                    values: [
                        "sitting", "standing", "running", "walking", "sleeping", "jumping",
                        "flying", "eating", "crouching", "leaping", "resting", "diving",
                    ]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                },
            ],
        }
    }

    /// A schema with synthetic value names, used to scale vocabulary size in
    /// benchmarks (word-level symbol sets grow with the value inventory;
    /// character-level ones do not).
    pub fn synthetic(categories: usize, colors: usize) -> Result<Self> {
        AttributeSchema::new(vec![
            AttributeSpec {
                name: "category".into(),
                values: (0..categories).map(|i| format!("kind{i:03}")).collect(),
            },
            AttributeSpec {
                name: "color".into(),
                values: (0..colors).map(|i| format!("tone{i:02}")).collect(),
            },
        ])
    }
}

/// A caption template: literal tokens mixed with `{attribute}` slots, plus a
/// sampling weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Template {
    pub pattern: String,
    pub weight: f64,
}

/// A weighted set of caption templates over a schema's attributes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaptionGrammar {
    pub templates: Vec<Template>,
}

impl CaptionGrammar {
    pub fn new(templates: Vec<Template>) -> Result<Self> {
        if templates.is_empty() {
            return Err(Error::InvalidConfig("grammar needs >= 1 template".into()));
        }
        for t in &templates {
            if t.weight.is_nan() || t.weight <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "template {:?} needs a positive weight",
                    t.pattern
                )));
            }
        }
        Ok(CaptionGrammar { templates })
    }

    /// Templates mentioning zero to two attributes beyond the category. The
    /// generic template dominates, so a literal speaker prefers it; the
    /// specific ones exist, so an informative speaker can reach them, and
    /// together they span enough caption strings that a 50-caption beam
    /// cannot cover the plausible space of a cluster.
    pub fn default_grammar() -> Self {
        CaptionGrammar {
            templates: vec![
                Template {
                    pattern: "a {category}".into(),
                    weight: 4.0,
                },
                Template {
                    pattern: "a {color} {category}".into(),
                    weight: 3.0,
                },
                Template {
                    pattern: "a {size} {category}".into(),
                    weight: 2.0,
                },
                Template {
                    pattern: "a {pose} {category}".into(),
                    weight: 0.5,
                },
                Template {
                    pattern: "a {size} {color} {category}".into(),
                    weight: 1.0,
                },
                Template {
                    pattern: "a {pose} {color} {category}".into(),
                    weight: 0.2,
                },
            ],
        }
    }

    /// The two-template grammar of the red-bus example: a bare category
    /// caption and a color-qualified one.
    pub fn red_bus_grammar() -> Self {
        CaptionGrammar {
            templates: vec![
                Template {
                    pattern: "a {category}".into(),
                    weight: 1.0,
                },
                Template {
                    pattern: "a {color} {category}".into(),
                    weight: 1.0,
                },
            ],
        }
    }

    /// Instantiate one template's slots from an item's attributes.
    pub fn instantiate(&self, template_index: usize, item: &Item) -> Result<String> {
        let pattern = &self.templates[template_index].pattern;
        let mut tokens = Vec::new();
        for tok in pattern.split_whitespace() {
            if let Some(name) = tok.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
                let value = item.attr(name).ok_or_else(|| Error::SlotUnfillable {
                    slot: name.to_string(),
                    item: item.id.clone(),
                })?;
                tokens.push(value.to_string());
            } else {
                tokens.push(tok.to_string());
            }
        }
        Ok(tokens.join(" "))
    }
}

/// Sample `count` items, each attribute value drawn uniformly and
/// independently. Ids run `item-0000`, `item-0001`, ...
pub fn generate_items(schema: &AttributeSchema, count: usize, seed: u64) -> Vec<Item> {
    let mut rng = SplitMix64::new(seed);
    let mut items = Vec::with_capacity(count);
    for i in 0..count {
        let mut attributes = BTreeMap::new();
        for attr in &schema.attributes {
            let v = rng.next_below(attr.values.len() as u64) as usize;
            attributes.insert(attr.name.clone(), attr.values[v].clone());
        }
        items.push(Item {
            id: format!("item-{i:04}"),
            attributes,
        });
    }
    items
}

/// Sample `captions_per_item` captions for every item by drawing templates
/// by weight and filling slots from the item's own attributes. Every caption
/// is true of its item by construction.
pub fn generate_corpus(
    items: &[Item],
    grammar: &CaptionGrammar,
    captions_per_item: usize,
    seed: u64,
) -> Result<Vec<(Item, String)>> {
    if captions_per_item < 2 {
        return Err(Error::InvalidConfig(
            "captions_per_item must be >= 2 so both corpus halves see every item".into(),
        ));
    }
    let weights: Vec<f64> = grammar.templates.iter().map(|t| t.weight).collect();
    let mut rng = SplitMix64::new(seed);
    let mut corpus = Vec::with_capacity(items.len() * captions_per_item);
    for item in items {
        for _ in 0..captions_per_item {
            let t = rng.next_weighted(&weights);
            let caption = grammar.instantiate(t, item)?;
            corpus.push((item.clone(), caption));
        }
    }
    Ok(corpus)
}

/// Build clusters whose items share a category value.
///
/// The 10 most frequent values of `category_attr` are chosen (ties break
/// alphabetically); clusters are assigned round-robin across them and filled
/// with 10 distinct items of that category, without reusing items.
pub fn build_clusters_shared_category(
    items: &[Item],
    category_attr: &str,
    clusters: usize,
    seed: u64,
) -> Result<Vec<Cluster>> {
    let mut by_value: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, item) in items.iter().enumerate() {
        if let Some(v) = item.attr(category_attr) {
            by_value.entry(v).or_default().push(i);
        }
    }
    // Most frequent first; BTreeMap iteration makes count ties alphabetical.
    let mut ranked: Vec<(&str, usize)> = by_value.iter().map(|(v, ids)| (*v, ids.len())).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let chosen: Vec<&str> = ranked.iter().take(10).map(|(v, _)| *v).collect();
    if chosen.is_empty() {
        return Err(Error::InsufficientItems {
            needed: Cluster::SIZE,
            available: 0,
        });
    }

    // Per-category pools, shuffled once, consumed in disjoint chunks.
    let mut rng = SplitMix64::new(seed);
    let mut pools: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for v in &chosen {
        let mut pool = by_value[v].clone();
        rng.shuffle(&mut pool);
        pools.insert(v, pool);
    }
    // Capacity check before building anything: clusters are distributed
    // round-robin, so category slot c serves ceil((clusters - c) / len).
    for (c, v) in chosen.iter().enumerate() {
        let assigned = (clusters + chosen.len() - 1 - c) / chosen.len();
        let needed = assigned * Cluster::SIZE;
        let available = pools[v].len();
        if needed > available {
            return Err(Error::InsufficientItems { needed, available });
        }
    }

    let mut out = Vec::with_capacity(clusters);
    for c in 0..clusters {
        let v = chosen[c % chosen.len()];
        let pool = pools.get_mut(v).expect("chosen category has a pool");
        let members: Vec<Item> = pool
            .drain(..Cluster::SIZE)
            .map(|i| items[i].clone())
            .collect();
        out.push(Cluster::new(format!("cat-{c:04}-{v}"), members)?);
    }
    Ok(out)
}

/// Build clusters of items whose caption token sets overlap.
///
/// Greedy: pick an unused seed item at random, then add the 9 unused items
/// with the highest Jaccard overlap between caption token sets (ties break
/// toward the lower item index). Items are not reused across clusters.
pub fn build_clusters_caption_overlap(
    corpus: &[(Item, String)],
    clusters: usize,
    seed: u64,
) -> Result<Vec<Cluster>> {
    // Union token set per item, in first-appearance order.
    let mut order: Vec<&Item> = Vec::new();
    let mut tokens: BTreeMap<&str, HashSet<String>> = BTreeMap::new();
    for (item, caption) in corpus {
        if !tokens.contains_key(item.id.as_str()) {
            order.push(item);
        }
        let set = tokens.entry(item.id.as_str()).or_default();
        for tok in caption.to_lowercase().split_whitespace() {
            set.insert(tok.to_string());
        }
    }
    let n = order.len();
    let mut used = vec![false; n];
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(clusters);

    for c in 0..clusters {
        let remaining: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        if remaining.len() < Cluster::SIZE {
            return Err(Error::InsufficientItems {
                needed: Cluster::SIZE,
                available: remaining.len(),
            });
        }
        let seed_item = remaining[rng.next_below(remaining.len() as u64) as usize];
        used[seed_item] = true;
        let seed_tokens = &tokens[order[seed_item].id.as_str()];

        let mut scored: Vec<(f64, usize)> = remaining
            .iter()
            .filter(|&&i| i != seed_item)
            .map(|&i| (jaccard(seed_tokens, &tokens[order[i].id.as_str()]), i))
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut members = vec![order[seed_item].clone()];
        for &(_, i) in scored.iter().take(Cluster::SIZE - 1) {
            used[i] = true;
            members.push(order[i].clone());
        }
        out.push(Cluster::new(format!("ovl-{c:04}"), members)?);
    }
    Ok(out)
}

/// Jaccard similarity of two token sets.
pub fn jaccard(a: &HashSet<String>, b: &HashSet<String>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.intersection(b).count() as f64;
    let union = a.union(b).count() as f64;
    inter / union
}
