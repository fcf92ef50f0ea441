//! The run configuration document.
//!
//! One JSON file fully determines a run: dataset shape, model
//! hyperparameters, inference knobs, seeds, output paths. Unknown keys are
//! rejected. Command-line `--set dotted.path=value` flags override individual
//! keys; the overridden document is validated as a whole.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::core::{Granularity, RSAConfig};
use crate::error::{Error, Result};
use crate::speaker::NGramConfig;
use crate::synth::{AttributeSchema, CaptionGrammar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SynthSection {
    pub item_count: usize,
    pub captions_per_item: usize,
    pub clusters_per_test_set: usize,
    pub category_attribute: String,
    pub schema: AttributeSchema,
    pub grammar: CaptionGrammar,
}

impl Default for SynthSection {
    fn default() -> Self {
        SynthSection {
            item_count: 2000,
            captions_per_item: 5,
            clusters_per_test_set: 100,
            category_attribute: "category".into(),
            schema: AttributeSchema::default_schema(),
            grammar: CaptionGrammar::default_grammar(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RsaSection {
    pub alpha: f64,
    pub beam_width: usize,
    pub max_length_char: usize,
    pub max_length_word: usize,
    pub epsilon_floor: f64,
    pub length_normalize: bool,
}

impl Default for RsaSection {
    fn default() -> Self {
        RsaSection {
            alpha: 5.0,
            beam_width: 10,
            max_length_char: 60,
            max_length_word: 20,
            epsilon_floor: 1e-12,
            length_normalize: false,
        }
    }
}

impl RsaSection {
    pub fn config(&self, granularity: Granularity) -> RSAConfig {
        let mut cfg = RSAConfig::for_granularity(granularity);
        cfg.alpha = self.alpha;
        cfg.beam_width = self.beam_width;
        cfg.max_length = match granularity {
            Granularity::Character => self.max_length_char,
            Granularity::Word => self.max_length_word,
        };
        cfg.epsilon_floor = self.epsilon_floor;
        cfg.length_normalize = self.length_normalize;
        cfg
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchSection {
    pub world_sizes: Vec<usize>,
    pub rerank_ns: Vec<usize>,
    pub repetitions: usize,
    pub min_steps: usize,
    pub fixture_categories: usize,
    pub fixture_colors: usize,
    pub fixture_items: usize,
    pub vocab_steps: Vec<usize>,
}

impl Default for BenchSection {
    fn default() -> Self {
        BenchSection {
            world_sizes: vec![2, 10, 50],
            rerank_ns: vec![2, 8, 32],
            repetitions: 5,
            min_steps: 200,
            fixture_categories: 120,
            fixture_colors: 40,
            fixture_items: 400,
            vocab_steps: vec![32, 128, 512],
        }
    }
}

/// The whole run configuration. `seed` at the root drives every derived
/// seed; two runs from the same document produce identical outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub out_dir: PathBuf,
    pub synth: SynthSection,
    pub ngram_char: NGramConfig,
    pub ngram_word: NGramConfig,
    pub rsa: RsaSection,
    pub bench: BenchSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 17,
            out_dir: PathBuf::from("runs/default"),
            synth: SynthSection::default(),
            ngram_char: NGramConfig::char_default(),
            ngram_word: NGramConfig::word_default(),
            rsa: RsaSection::default(),
            bench: BenchSection::default(),
        }
    }
}

/// Derived seeds, one fixed offset per purpose.
impl RunConfig {
    pub fn items_seed(&self) -> u64 {
        self.seed
    }

    pub fn corpus_seed(&self) -> u64 {
        self.seed.wrapping_add(1)
    }

    pub fn ts1_seed(&self) -> u64 {
        self.seed.wrapping_add(2)
    }

    pub fn ts2_seed(&self) -> u64 {
        self.seed.wrapping_add(3)
    }

    pub fn split_seed(&self) -> u64 {
        self.seed.wrapping_add(4)
    }

    pub fn validate(&self) -> Result<()> {
        if self.synth.item_count < 1 {
            return Err(Error::InvalidConfig("synth.item_count must be >= 1".into()));
        }
        if self.synth.captions_per_item < 2 {
            return Err(Error::InvalidConfig(
                "synth.captions_per_item must be >= 2".into(),
            ));
        }
        if self.synth.clusters_per_test_set < 1 {
            return Err(Error::InvalidConfig(
                "synth.clusters_per_test_set must be >= 1".into(),
            ));
        }
        AttributeSchema::new(self.synth.schema.attributes.clone())?;
        CaptionGrammar::new(self.synth.grammar.templates.clone())?;
        self.ngram_char.validate()?;
        self.ngram_word.validate()?;
        self.rsa.config(Granularity::Character).validate()?;
        self.rsa.config(Granularity::Word).validate()?;
        if self.bench.world_sizes.is_empty() || self.bench.rerank_ns.is_empty() {
            return Err(Error::InvalidConfig(
                "bench.world_sizes and bench.rerank_ns must be nonempty".into(),
            ));
        }
        if self.bench.repetitions < 1 || self.bench.min_steps < 1 {
            return Err(Error::InvalidConfig(
                "bench.repetitions and bench.min_steps must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Canonical JSON snapshot embedded in reports.
    pub fn snapshot(&self) -> Result<Value> {
        Ok(serde_json::to_value(self)?)
    }
}

/// Load a config document (or the built-in default), apply `--set` overrides,
/// and validate the result.
pub fn load_config(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig> {
    let mut value: Value = match path {
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
        None => serde_json::to_value(RunConfig::default())?,
    };
    for spec in overrides {
        apply_override(&mut value, spec)?;
    }
    let config: RunConfig = serde_json::from_value(value)
        .map_err(|e| Error::InvalidConfig(format!("config does not match the schema: {e}")))?;
    config.validate()?;
    Ok(config)
}

/// Apply one `dotted.path=value` override. The value parses as JSON when it
/// can (numbers, booleans, arrays) and falls back to a plain string.
fn apply_override(root: &mut Value, spec: &str) -> Result<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::InvalidConfig(format!("override {spec:?} is not KEY=VALUE")))?;
    let new_value: Value = serde_json::from_str(raw).unwrap_or(Value::String(raw.to_string()));
    let mut cursor = root;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, segment) in segments.iter().enumerate() {
        let object = cursor.as_object_mut().ok_or_else(|| {
            Error::InvalidConfig(format!("override path {path:?} crosses a non-object"))
        })?;
        if i + 1 == segments.len() {
            object.insert(segment.to_string(), new_value);
            return Ok(());
        }
        cursor = object
            .entry(segment.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    Ok(())
}
