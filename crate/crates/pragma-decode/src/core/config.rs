//! Inference-engine configuration.

use serde::{Deserialize, Serialize};

use crate::core::alphabet::Granularity;
use crate::error::{Error, Result};

/// How the listener prior over items evolves across unrolling steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorMode {
    /// Carry the listener posterior from the previous step.
    #[default]
    Carried,
    /// Reset to uniform at every step.
    UniformReset,
}

/// Which base distribution the pragmatic speaker is constrained by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeakerPrior {
    /// The literal speaker's own next-symbol distribution for the target.
    #[default]
    S0Constrained,
    /// An item-independent language model replaces the literal factor.
    ExternalLm,
}

/// Which listener updates the carried belief after a symbol is emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeliefUpdate {
    /// Product of literal-listener posterior and literal-speaker probability.
    #[default]
    L1,
    /// Plain literal-listener posterior.
    L0,
}

/// Knobs of the incremental inference engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RSAConfig {
    /// Rationality: exponent on the listener term. Zero disables pragmatics.
    pub alpha: f64,
    pub beam_width: usize,
    /// Content symbols allowed before forced truncation.
    pub max_length: usize,
    pub prior_mode: PriorMode,
    pub speaker_prior: SpeakerPrior,
    pub belief_update: BeliefUpdate,
    /// Weights inside inference steps are floored here before normalizing, so
    /// a symbol judged impossible for every item cannot produce a 0/0.
    pub epsilon_floor: f64,
    /// Divide beam scores by caption length when ranking. Off by default;
    /// chain-rule scores are used as-is.
    pub length_normalize: bool,
}

impl Default for RSAConfig {
    fn default() -> Self {
        RSAConfig {
            alpha: 5.0,
            beam_width: 10,
            max_length: 60,
            prior_mode: PriorMode::Carried,
            speaker_prior: SpeakerPrior::S0Constrained,
            belief_update: BeliefUpdate::L1,
            epsilon_floor: 1e-12,
            length_normalize: false,
        }
    }
}

impl RSAConfig {
    /// Defaults for the given granularity: character captions run to 60
    /// symbols, word captions to 20.
    pub fn for_granularity(granularity: Granularity) -> Self {
        RSAConfig {
            max_length: match granularity {
                Granularity::Character => 60,
                Granularity::Word => 20,
            },
            ..RSAConfig::default()
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beam_width(mut self, beam_width: usize) -> Self {
        self.beam_width = beam_width;
        self
    }

    pub fn with_max_length(mut self, max_length: usize) -> Self {
        self.max_length = max_length;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_nan() || self.alpha < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "alpha must be nonnegative, got {}",
                self.alpha
            )));
        }
        if self.beam_width < 1 {
            return Err(Error::InvalidConfig("beam_width must be >= 1".into()));
        }
        if self.max_length < 1 {
            return Err(Error::InvalidConfig("max_length must be >= 1".into()));
        }
        if self.epsilon_floor.is_nan() || self.epsilon_floor < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "epsilon_floor must be >= 0, got {}",
                self.epsilon_floor
            )));
        }
        Ok(())
    }
}
