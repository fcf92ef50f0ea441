//! Foundational domain types and normalized probability arithmetic.
//!
//! Everything downstream (speakers, the inference engine, evaluation) is
//! built from these pieces: alphabets with START/EOS sentinels, worlds of
//! attributed items, partial captions, normalized distributions, and belief
//! states over items.
//!
//! Per-step distributions are stored in linear space (their supports are
//! small); whole-caption probabilities are accumulated in log space.
//! All types are immutable after construction.

mod alphabet;
mod caption;
mod config;
mod dist;
mod world;

pub use alphabet::{Alphabet, Granularity, EOS_TOKEN, START_TOKEN};
pub use caption::PartialCaption;
pub use config::{BeliefUpdate, PriorMode, RSAConfig, SpeakerPrior};
pub use dist::{normalize, pointwise_product_pow, BeliefState, Distribution};
pub use world::{Corpus, Item, WorldSet};
