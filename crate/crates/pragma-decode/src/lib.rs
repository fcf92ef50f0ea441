//! Pragmatically informative caption generation.
//!
//! A generative sequence model on its own says things that are *true* of a
//! target; it has no reason to say things that *distinguish* the target from
//! its neighbors. This crate wraps any step-wise sequence model in a
//! listener/speaker inference loop so that every emitted symbol is chosen
//! both for fluency and for how well an imagined listener could pick the
//! target out of a set of candidates. Decoding stays cheap because the
//! inference runs over the symbol alphabet at each step, never over the
//! space of whole captions.
//!
//! The pieces:
//!
//! - [`core`]: alphabets, worlds, partial captions, distributions, belief
//!   states, and the engine configuration.
//! - [`speaker`]: literal speakers. Exact table models for tests, truth
//!   tables for whole-utterance reference games, and attribute-conditioned
//!   n-gram models trained on caption corpora.
//! - [`rsa`]: the inference engine. Step operators, greedy and beam
//!   unrolling with belief carrying, the whole-utterance classic setup, and
//!   the sample-then-infer baseline.
//! - [`eval`]: the experiment harness. Split-training discipline, the
//!   evaluation listener, referential success, and the beam-containment
//!   analysis.
//! - [`synth`]: synthetic reference-game worlds from attribute schemas and
//!   caption template grammars, with a pinned portable generator.
//! - [`mod@bench`]: the timing harness behind the `bench` subcommand.
//! - [`cli`]: the `pragma-decode` command-line surface.
//!
//! The accompanying guide under `book/` walks through the theory and the
//! tooling; its code blocks compile and run as doc-tests of this crate.

pub mod audit;
pub mod bench;
pub mod cli;
pub mod core;
pub mod eval;
pub mod rsa;
pub mod speaker;
pub mod synth;

mod error;
mod par;

pub use error::{Error, Result};

// The guide's chapters double as doc-tests so the book cannot drift from
// the library.
#[doc = include_str!("../../../book/src/reference-games.md")]
mod _book_reference_games {}
#[doc = include_str!("../../../book/src/incremental-decoding.md")]
mod _book_incremental_decoding {}
#[doc = include_str!("../../../book/src/literal-speakers.md")]
mod _book_literal_speakers {}
#[doc = include_str!("../../../book/src/evaluation.md")]
mod _book_evaluation {}
#[doc = include_str!("../../../book/src/synthetic-worlds.md")]
mod _book_synthetic_worlds {}
#[doc = include_str!("../../../book/src/benchmarks.md")]
mod _book_benchmarks {}
