//! Helpers shared by the integration test binaries.

use pragma_decode::core::{Alphabet, Distribution, Granularity, Item, PartialCaption, WorldSet};
use pragma_decode::speaker::{ConditionalSequenceModel, TableModel};
use pragma_decode::synth::SplitMix64;

/// Deterministic randomized table model over `n_symbols` total symbols and
/// `n_items` items, with explicit rows for every prefix up to `depth`
/// content symbols; deeper prefixes fall back to the EOS point mass.
#[allow(dead_code)]
pub fn random_table_model(
    seed: u64,
    n_symbols: usize,
    n_items: usize,
    depth: usize,
) -> (TableModel, WorldSet, Alphabet) {
    let mut symbols = vec!["<s>".to_string(), "</s>".to_string()];
    for i in 0..n_symbols.saturating_sub(2) {
        symbols.push(format!("s{i}"));
    }
    let alphabet = Alphabet::new(symbols, 0, 1, Granularity::Word).unwrap();
    let items: Vec<Item> = (0..n_items).map(|i| Item::new(format!("w{i}"))).collect();
    let world = WorldSet::new(items).unwrap();
    let mut rng = SplitMix64::new(seed);
    let mut model = TableModel::new(alphabet.clone());
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    for _ in 0..=depth {
        let mut next = Vec::new();
        for prefix in &frontier {
            for item in world.items() {
                let weights: Vec<f64> = (0..alphabet.len())
                    .map(|s| if s == 0 { 0.0 } else { rng.next_f64() + 0.01 })
                    .collect();
                model.set(
                    &item.id,
                    prefix,
                    Distribution::from_weights(&weights).unwrap(),
                );
            }
            for sym in 2..alphabet.len() {
                let mut q = prefix.clone();
                q.push(sym);
                next.push(q);
            }
        }
        frontier = next;
    }
    (model, world, alphabet)
}

/// Enumerate every EOS-terminated caption of content length <= `max_len` by
/// walking per-step distributions in linear space. Returns full symbol-id
/// sequences (including sentinels) with their chain-rule probabilities.
#[allow(dead_code)]
pub fn enumerate_captions<M: ConditionalSequenceModel + ?Sized>(
    model: &M,
    item: &Item,
    max_len: usize,
) -> Vec<(Vec<usize>, f64)> {
    let alphabet = model.alphabet();
    let mut out = Vec::new();
    let mut stack = vec![(PartialCaption::start(alphabet), 1.0f64)];
    while let Some((prefix, prob)) = stack.pop() {
        let dist = model.next_symbol_dist(item, &prefix);
        for sym in 0..alphabet.len() {
            if sym == alphabet.start_id() {
                continue;
            }
            let p = dist.get(sym);
            if p <= 0.0 {
                continue;
            }
            let next = prefix.extended(sym).unwrap();
            if sym == alphabet.eos_id() {
                out.push((next.symbol_ids().to_vec(), prob * p));
            } else if next.content().len() < max_len {
                stack.push((next, prob * p));
            }
        }
    }
    out
}
