//! Attribute-conditioned n-gram literal speakers.
//!
//! The predictive distribution interpolates between the item's attribute
//! evidence and a global table:
//!
//! ```text
//! P(u | item, ctx) = lambda * mean_{a in item.attributes} P_a(u | ctx)
//!                  + (1 - lambda) * P_global(u | ctx)
//! ```
//!
//! where each `P_table(u | ctx) = (count + k) / (total + k * V)` is an
//! additively smoothed relative frequency over the `V` emittable symbols
//! (everything except START). Counts are exact corpus counts; smoothing and
//! interpolation happen at query time.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::core::{Alphabet, Distribution, Item, PartialCaption};
use crate::error::{Error, Result};
use crate::speaker::ConditionalSequenceModel;

/// Hyperparameters of an n-gram speaker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NGramConfig {
    /// Model order: contexts are the last `order - 1` symbols.
    pub order: usize,
    /// Additive smoothing constant, > 0.
    pub k: f64,
    /// Weight on the attribute-conditioned component, in [0, 1].
    /// Zero makes the model ignore items entirely.
    pub lambda: f64,
}

impl NGramConfig {
    pub fn char_default() -> Self {
        NGramConfig {
            order: 4,
            k: 0.1,
            lambda: 0.7,
        }
    }

    pub fn word_default() -> Self {
        NGramConfig {
            order: 2,
            k: 0.1,
            lambda: 0.7,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 1 {
            return Err(Error::InvalidConfig("n-gram order must be >= 1".into()));
        }
        if self.k.is_nan() || self.k <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "smoothing k must be > 0, got {}",
                self.k
            )));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidConfig(format!(
                "lambda must be in [0, 1], got {}",
                self.lambda
            )));
        }
        Ok(())
    }
}

type CountRow = HashMap<usize, u64>;
type CountTable = HashMap<Vec<usize>, CountRow>;

/// A trained attribute-conditioned n-gram speaker. Immutable after training;
/// concurrent queries are safe.
#[derive(Debug, Clone)]
pub struct NGramModel {
    alphabet: Alphabet,
    config: NGramConfig,
    global: CountTable,
    attr: HashMap<String, CountTable>,
}

/// Train an n-gram speaker on exact corpus counts.
///
/// Every caption must tokenize entirely into alphabet content symbols.
pub fn train_ngram(
    corpus: &[(Item, String)],
    alphabet: &Alphabet,
    config: NGramConfig,
) -> Result<NGramModel> {
    config.validate()?;
    if corpus.is_empty() {
        return Err(Error::CorpusTooSmall(0));
    }
    let mut global: CountTable = HashMap::new();
    let mut attr: HashMap<String, CountTable> = HashMap::new();
    let ctx_len = config.order - 1;
    for (item, caption) in corpus {
        let pc = PartialCaption::complete(alphabet, caption)?;
        let ids = pc.symbol_ids();
        for i in 1..ids.len() {
            let lo = i.saturating_sub(ctx_len);
            let ctx = &ids[lo..i];
            let next = ids[i];
            *global
                .entry(ctx.to_vec())
                .or_default()
                .entry(next)
                .or_insert(0) += 1;
            for (name, value) in &item.attributes {
                let key = format!("{name}={value}");
                *attr
                    .entry(key)
                    .or_default()
                    .entry(ctx.to_vec())
                    .or_default()
                    .entry(next)
                    .or_insert(0) += 1;
            }
        }
    }
    Ok(NGramModel {
        alphabet: alphabet.clone(),
        config,
        global,
        attr,
    })
}

impl NGramModel {
    pub fn config(&self) -> &NGramConfig {
        &self.config
    }

    fn context<'a>(&self, prefix: &'a PartialCaption) -> &'a [usize] {
        let ids = prefix.symbol_ids();
        let ctx_len = self.config.order - 1;
        let lo = ids.len().saturating_sub(ctx_len);
        &ids[lo..]
    }

    /// Additively smoothed next-symbol weights for one table and context.
    /// START gets zero; every other symbol gets `(count + k) / (total + kV)`.
    fn smoothed(&self, table: Option<&CountTable>, ctx: &[usize]) -> Vec<f64> {
        let n = self.alphabet.len();
        let v = (n - 1) as f64;
        let start = self.alphabet.start_id();
        let row = table.and_then(|t| t.get(ctx));
        let total: u64 = row.map(|r| r.values().sum()).unwrap_or(0);
        let denom = total as f64 + self.config.k * v;
        let default = self.config.k / denom;
        let mut out = vec![default; n];
        out[start] = 0.0;
        if let Some(row) = row {
            for (&sym, &count) in row {
                out[sym] = (count as f64 + self.config.k) / denom;
            }
        }
        out
    }
}

impl ConditionalSequenceModel for NGramModel {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn next_symbol_dist(&self, item: &Item, prefix: &PartialCaption) -> Distribution {
        let ctx = self.context(prefix);
        let global = self.smoothed(Some(&self.global), ctx);
        let lambda = self.config.lambda;
        // Items with no attributes fall back to the global table.
        if lambda == 0.0 || item.attributes.is_empty() {
            return Distribution::from_weights(&global)
                .expect("smoothed weights are strictly positive");
        }
        let mut mean = vec![0.0; self.alphabet.len()];
        let n_attrs = item.attributes.len() as f64;
        for (name, value) in &item.attributes {
            let key = format!("{name}={value}");
            let dist = self.smoothed(self.attr.get(&key), ctx);
            for (m, d) in mean.iter_mut().zip(dist.iter()) {
                *m += d / n_attrs;
            }
        }
        let weights: Vec<f64> = mean
            .iter()
            .zip(global.iter())
            .map(|(a, g)| lambda * a + (1.0 - lambda) * g)
            .collect();
        Distribution::from_weights(&weights).expect("smoothed weights are strictly positive")
    }
}

const MODEL_FILE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CtxCounts {
    ctx: Vec<usize>,
    counts: Vec<(usize, u64)>,
}

/// Versioned on-disk form. Rows and counts are sorted so serialization is
/// deterministic and count round-trips are bit-exact.
#[derive(Serialize, Deserialize)]
struct NGramModelFile {
    version: u32,
    config: NGramConfig,
    alphabet: Alphabet,
    global: Vec<CtxCounts>,
    attr: BTreeMap<String, Vec<CtxCounts>>,
}

fn table_to_rows(table: &CountTable) -> Vec<CtxCounts> {
    let mut rows: Vec<CtxCounts> = table
        .iter()
        .map(|(ctx, row)| {
            let mut counts: Vec<(usize, u64)> = row.iter().map(|(&s, &c)| (s, c)).collect();
            counts.sort_unstable();
            CtxCounts {
                ctx: ctx.clone(),
                counts,
            }
        })
        .collect();
    rows.sort_unstable_by(|a, b| a.ctx.cmp(&b.ctx));
    rows
}

fn rows_to_table(rows: Vec<CtxCounts>) -> CountTable {
    rows.into_iter()
        .map(|r| (r.ctx, r.counts.into_iter().collect()))
        .collect()
}

impl NGramModel {
    pub fn to_json(&self) -> Result<String> {
        let file = NGramModelFile {
            version: MODEL_FILE_VERSION,
            config: self.config,
            alphabet: self.alphabet.clone(),
            global: table_to_rows(&self.global),
            attr: self
                .attr
                .iter()
                .map(|(k, t)| (k.clone(), table_to_rows(t)))
                .collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let file: NGramModelFile = serde_json::from_str(json)?;
        if file.version != MODEL_FILE_VERSION {
            return Err(Error::ModelFormat(format!(
                "unsupported model file version {} (expected {})",
                file.version, MODEL_FILE_VERSION
            )));
        }
        file.config.validate()?;
        let mut alphabet = file.alphabet;
        alphabet.rebuild_index();
        Ok(NGramModel {
            alphabet,
            config: file.config,
            global: rows_to_table(file.global),
            attr: file
                .attr
                .into_iter()
                .map(|(k, rows)| (k, rows_to_table(rows)))
                .collect(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = fs::read_to_string(path)?;
        Self::from_json(&json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item_a() -> Item {
        Item::new("A").with_attr("kind", "thing")
    }

    #[test]
    fn single_path_corpus_concentrates() {
        let corpus = vec![(item_a(), "ab".to_string())];
        let alphabet = Alphabet::char_from_corpus(corpus.iter().map(|(_, c)| c.as_str())).unwrap();
        let cfg = NGramConfig {
            order: 2,
            k: 1e-6,
            lambda: 1.0,
        };
        let model = train_ngram(&corpus, &alphabet, cfg).unwrap();
        let dist = model.next_symbol_dist(&item_a(), &PartialCaption::start(&alphabet));
        let a_id = alphabet.id_of("a").unwrap();
        assert!(dist.get(a_id) >= 0.99);
    }

    #[test]
    fn two_branch_symmetry() {
        let corpus = vec![
            (item_a(), "ab".to_string()),
            (item_a(), "ac".to_string()),
        ];
        let alphabet = Alphabet::char_from_corpus(corpus.iter().map(|(_, c)| c.as_str())).unwrap();
        let cfg = NGramConfig {
            order: 2,
            k: 1e-9,
            lambda: 1.0,
        };
        let model = train_ngram(&corpus, &alphabet, cfg).unwrap();
        let prefix =
            PartialCaption::from_content(&alphabet, &[alphabet.id_of("a").unwrap()], false)
                .unwrap();
        let dist = model.next_symbol_dist(&item_a(), &prefix);
        let b = dist.get(alphabet.id_of("b").unwrap());
        let c = dist.get(alphabet.id_of("c").unwrap());
        assert!((b - 0.5).abs() < 1e-6);
        assert!((c - 0.5).abs() < 1e-6);
    }

    #[test]
    fn counting_oracle_on_template_corpus() {
        // 50 captions over 3 items; predictive mass must equal smoothed
        // relative frequencies recomputed by an independent counting pass.
        let items = [
            Item::new("i0").with_attr("color", "red"),
            Item::new("i1").with_attr("color", "blue"),
            Item::new("i2").with_attr("color", "red"),
        ];
        let mut corpus = Vec::new();
        for rep in 0..50 {
            let item = items[rep % 3].clone();
            let caption = format!("a {} dot", item.attr("color").unwrap());
            corpus.push((item, caption));
        }
        let alphabet = Alphabet::word_from_corpus(corpus.iter().map(|(_, c)| c.as_str())).unwrap();
        let cfg = NGramConfig {
            order: 2,
            k: 0.5,
            lambda: 1.0,
        };
        let model = train_ngram(&corpus, &alphabet, cfg).unwrap();

        // Independent oracle: count transitions out of context ["a"] for
        // color=red items and normalize with additive smoothing.
        let a_id = alphabet.id_of("a").unwrap();
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for (item, caption) in &corpus {
            if item.attr("color") != Some("red") {
                continue;
            }
            let ids = alphabet.encode(caption).unwrap();
            for w in ids.windows(2) {
                if w[0] == a_id {
                    *counts.entry(w[1]).or_insert(0) += 1;
                }
            }
        }
        let total: u64 = counts.values().sum();
        let v = (alphabet.len() - 1) as f64;
        let prefix = PartialCaption::from_content(&alphabet, &[a_id], false).unwrap();
        let dist = model.next_symbol_dist(&items[0], &prefix);
        for sym in 0..alphabet.len() {
            if sym == alphabet.start_id() {
                assert_eq!(dist.get(sym), 0.0);
                continue;
            }
            let c = *counts.get(&sym).unwrap_or(&0) as f64;
            let expected = (c + cfg.k) / (total as f64 + cfg.k * v);
            assert!(
                (dist.get(sym) - expected).abs() < 1e-12,
                "symbol {sym}: {} vs {expected}",
                dist.get(sym)
            );
        }
    }

    #[test]
    fn lambda_zero_ignores_attributes() {
        let corpus = vec![
            (Item::new("A").with_attr("color", "red"), "ra".to_string()),
            (Item::new("B").with_attr("color", "blue"), "ba".to_string()),
        ];
        let alphabet = Alphabet::char_from_corpus(corpus.iter().map(|(_, c)| c.as_str())).unwrap();
        let cfg = NGramConfig {
            order: 3,
            k: 0.1,
            lambda: 0.0,
        };
        let model = train_ngram(&corpus, &alphabet, cfg).unwrap();
        let prefix = PartialCaption::start(&alphabet);
        let da = model.next_symbol_dist(&corpus[0].0, &prefix);
        let db = model.next_symbol_dist(&corpus[1].0, &prefix);
        assert_eq!(da.max_abs_diff(&db), 0.0);
    }

    #[test]
    fn training_is_order_independent() {
        let mut corpus = vec![
            (Item::new("A").with_attr("x", "1"), "abc".to_string()),
            (Item::new("B").with_attr("x", "2"), "acb".to_string()),
            (Item::new("C").with_attr("x", "1"), "bca".to_string()),
        ];
        let alphabet = Alphabet::char_from_corpus(corpus.iter().map(|(_, c)| c.as_str())).unwrap();
        let cfg = NGramConfig {
            order: 3,
            k: 0.1,
            lambda: 0.5,
        };
        let forward = train_ngram(&corpus, &alphabet, cfg).unwrap();
        corpus.reverse();
        let backward = train_ngram(&corpus, &alphabet, cfg).unwrap();
        assert_eq!(forward.to_json().unwrap(), backward.to_json().unwrap());
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let corpus = vec![
            (Item::new("A").with_attr("color", "red"), "red dot".to_string()),
            (Item::new("B").with_attr("color", "blue"), "blue dot".to_string()),
        ];
        let alphabet = Alphabet::word_from_corpus(corpus.iter().map(|(_, c)| c.as_str())).unwrap();
        let model = train_ngram(&corpus, &alphabet, NGramConfig::word_default()).unwrap();
        let json = model.to_json().unwrap();
        let restored = NGramModel::from_json(&json).unwrap();
        assert_eq!(json, restored.to_json().unwrap());
        // Restored model answers queries identically.
        let prefix = PartialCaption::start(&alphabet);
        let a = model.next_symbol_dist(&corpus[0].0, &prefix);
        let b = restored.next_symbol_dist(&corpus[0].0, &prefix);
        assert_eq!(a.max_abs_diff(&b), 0.0);
    }

    #[test]
    fn rejects_unsupported_file_version() {
        let corpus = vec![(Item::new("A"), "ab".to_string())];
        let alphabet = Alphabet::char_from_corpus(["ab"]).unwrap();
        let model = train_ngram(&corpus, &alphabet, NGramConfig::char_default()).unwrap();
        let json = model.to_json().unwrap().replacen("\"version\":1", "\"version\":9", 1);
        assert!(matches!(
            NGramModel::from_json(&json),
            Err(Error::ModelFormat(_))
        ));
    }

    #[test]
    fn rejects_unknown_caption_symbols() {
        let corpus = vec![(Item::new("A"), "ab".to_string())];
        let alphabet = Alphabet::char_from_corpus(["a"]).unwrap();
        assert!(matches!(
            train_ngram(&corpus, &alphabet, NGramConfig::char_default()),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn rejects_empty_corpus() {
        let alphabet = Alphabet::char_from_corpus(["ab"]).unwrap();
        assert!(matches!(
            train_ngram(&[], &alphabet, NGramConfig::char_default()),
            Err(Error::CorpusTooSmall(0))
        ));
    }
}
