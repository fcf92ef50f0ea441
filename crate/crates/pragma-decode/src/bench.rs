//! Timing harness for the decoding engine.
//!
//! The quantities of interest: per-step pragmatic-inference latency as the
//! world grows (one literal query per item, so the cost is linear in the
//! world size), character- versus word-level cost at equal world size (the
//! symbol set is what differs), and the sample-then-infer baseline versus
//! incremental decoding as the sample budget grows (the incremental engine
//! does not depend on it).

use std::time::Instant;

use crate::core::{Item, RSAConfig, WorldSet};
use crate::error::Result;
use crate::rsa::{sample_rerank_baseline, unroll_beam, unroll_greedy, SpeakerKind};
use crate::speaker::{train_ngram, ConditionalSequenceModel, NGramConfig, NGramModel};
use crate::synth::{generate_corpus, generate_items, AttributeSchema, CaptionGrammar, Template};

/// Median of a sample set (averages the middle pair on even sizes).
pub fn median(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty());
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Ordinary least squares fit of `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> LinearFit {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for &(x, y) in points {
        let fit = intercept + slope * x;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    LinearFit {
        slope,
        intercept,
        r_squared,
    }
}

/// Mean seconds per pragmatic inference step, measured over repeated greedy
/// unrollings (cycling targets) until at least `min_steps` steps ran.
pub fn seconds_per_step<M: ConditionalSequenceModel + ?Sized>(
    kind: SpeakerKind,
    model: &M,
    world: &WorldSet,
    config: &RSAConfig,
    min_steps: usize,
) -> Result<f64> {
    let mut steps = 0usize;
    let mut target = 0usize;
    let start = Instant::now();
    while steps < min_steps {
        let (_, trace) = unroll_greedy(kind, model, world, target, config, None)?;
        steps += trace.len().max(1);
        target = (target + 1) % world.len();
    }
    Ok(start.elapsed().as_secs_f64() / steps as f64)
}

/// Wall seconds for one full beam caption of the given kind.
pub fn caption_seconds<M: ConditionalSequenceModel + ?Sized>(
    kind: SpeakerKind,
    model: &M,
    world: &WorldSet,
    target: usize,
    config: &RSAConfig,
) -> Result<f64> {
    let start = Instant::now();
    let _ = unroll_beam(kind, model, world, target, config, None)?;
    Ok(start.elapsed().as_secs_f64())
}

/// A trained model over a synthetic world pool, sized to stress the symbol
/// set: word-level symbol counts grow with the attribute value inventory,
/// character-level ones stay in the tens.
pub struct BenchFixture {
    pub items: Vec<Item>,
    pub char_model: NGramModel,
    pub word_model: NGramModel,
}

pub fn build_fixture(
    seed: u64,
    categories: usize,
    colors: usize,
    item_count: usize,
) -> Result<BenchFixture> {
    let schema = AttributeSchema::synthetic(categories, colors)?;
    let grammar = CaptionGrammar::new(vec![
        Template {
            pattern: "a {category}".into(),
            weight: 2.0,
        },
        Template {
            pattern: "a {color} {category}".into(),
            weight: 1.0,
        },
    ])?;
    let items = generate_items(&schema, item_count, seed);
    let corpus = generate_corpus(&items, &grammar, 2, seed.wrapping_add(1))?;
    let captions = || corpus.iter().map(|(_, c)| c.as_str());
    let char_alphabet = crate::core::Alphabet::char_from_corpus(captions())?;
    let word_alphabet = crate::core::Alphabet::word_from_corpus(captions())?;
    let char_model = train_ngram(&corpus, &char_alphabet, NGramConfig::char_default())?;
    let word_model = train_ngram(&corpus, &word_alphabet, NGramConfig::word_default())?;
    Ok(BenchFixture {
        items,
        char_model,
        word_model,
    })
}

impl BenchFixture {
    /// A world of the first `size` pool items.
    pub fn world(&self, size: usize) -> WorldSet {
        WorldSet::new(self.items[..size].to_vec()).expect("pool items are distinct")
    }
}

/// Median-of-`reps` per-step latency for each world size.
pub fn per_step_vs_world_size<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    fixture: &BenchFixture,
    sizes: &[usize],
    config: &RSAConfig,
    reps: usize,
    min_steps: usize,
) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let world = fixture.world(size);
        let mut samples = Vec::with_capacity(reps);
        for _ in 0..reps {
            samples.push(seconds_per_step(
                SpeakerKind::S1,
                model,
                &world,
                config,
                min_steps,
            )?);
        }
        out.push((size, median(&samples)));
    }
    Ok(out)
}

/// Median-of-`reps` wall time of the sample-then-infer baseline and of one
/// incremental pragmatic beam caption, for each sample budget `n`. The
/// incremental time is measured afresh per `n` even though `n` plays no role
/// in it; that is the point of the comparison.
pub fn rerank_vs_incremental<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    world: &WorldSet,
    target: usize,
    ns: &[usize],
    config: &RSAConfig,
    reps: usize,
) -> Result<Vec<(usize, f64, f64)>> {
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut rerank = Vec::with_capacity(reps);
        let mut incremental = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            let _ = sample_rerank_baseline(model, world, target, n, config.alpha, config)?;
            rerank.push(start.elapsed().as_secs_f64());
            incremental.push(caption_seconds(
                SpeakerKind::S1,
                model,
                world,
                target,
                config,
            )?);
        }
        out.push((n, median(&rerank), median(&incremental)));
    }
    Ok(out)
}
