//! Timing acceptance checks, kept in their own test binary so measurements
//! never share the process with the benchmark suite. All assertions are over
//! medians of repeated runs.

use pragma_decode::bench::{
    build_fixture, linear_fit, median, per_step_vs_world_size, rerank_vs_incremental,
    seconds_per_step,
};
use pragma_decode::core::{Granularity, RSAConfig};
use pragma_decode::rsa::SpeakerKind;
use pragma_decode::speaker::ConditionalSequenceModel;

const REPS: usize = 5;
const MIN_STEPS: usize = 300;

#[test]
fn criterion_8_efficiency_properties() {
    let fixture = build_fixture(7, 120, 40, 400).expect("bench fixture builds");
    let char_cfg = RSAConfig::for_granularity(Granularity::Character);
    let word_cfg = RSAConfig::for_granularity(Granularity::Word);

    // (a) Per-step pragmatic latency is linear in the world size.
    let scaling = per_step_vs_world_size(
        &fixture.char_model,
        &fixture,
        &[2, 10, 50],
        &char_cfg,
        REPS,
        MIN_STEPS,
    )
    .unwrap();
    let points: Vec<(f64, f64)> = scaling.iter().map(|&(w, s)| (w as f64, s)).collect();
    let fit = linear_fit(&points);
    assert!(
        fit.r_squared >= 0.95,
        "per-step latency vs world size fits a line poorly: r^2 = {:.4}, points {points:?}",
        fit.r_squared
    );
    println!(
        "PASS criterion 8a: per-step latency linear in world size (r^2 = {:.4}; {:?} us at |W| = 2/10/50)",
        fit.r_squared,
        scaling
            .iter()
            .map(|(_, s)| (s * 1e6).round())
            .collect::<Vec<_>>()
    );

    // (b) Character-level steps are cheaper than word-level steps at equal
    // world size (the word vocabulary is several times the char alphabet).
    let world = fixture.world(10);
    let char_secs = median(
        &(0..REPS)
            .map(|_| {
                seconds_per_step(
                    SpeakerKind::S1,
                    &fixture.char_model,
                    &world,
                    &char_cfg,
                    MIN_STEPS,
                )
                .unwrap()
            })
            .collect::<Vec<_>>(),
    );
    let word_secs = median(
        &(0..REPS)
            .map(|_| {
                seconds_per_step(
                    SpeakerKind::S1,
                    &fixture.word_model,
                    &world,
                    &word_cfg,
                    MIN_STEPS,
                )
                .unwrap()
            })
            .collect::<Vec<_>>(),
    );
    assert!(
        char_secs < word_secs,
        "char per-step ({char_secs:.2e}s, |U|={}) should beat word per-step ({word_secs:.2e}s, |U|={})",
        fixture.char_model.alphabet().len(),
        fixture.word_model.alphabet().len()
    );
    println!(
        "PASS criterion 8b: char per-step {:.1} us (|U| = {}) < word per-step {:.1} us (|U| = {}) at |W| = 10",
        char_secs * 1e6,
        fixture.char_model.alphabet().len(),
        word_secs * 1e6,
        fixture.word_model.alphabet().len()
    );

    // (c) The baseline's cost grows with its sample budget n; incremental
    // decoding does not depend on n.
    let pairs = rerank_vs_incremental(&fixture.char_model, &world, 0, &[2, 8, 32], &char_cfg, REPS)
        .unwrap();
    for window in pairs.windows(2) {
        assert!(
            window[1].1 > window[0].1,
            "baseline median must grow with n: {pairs:?}"
        );
    }
    let incr_min = pairs.iter().map(|p| p.2).fold(f64::INFINITY, f64::min);
    let incr_max = pairs.iter().map(|p| p.2).fold(0.0f64, f64::max);
    assert!(
        incr_max <= incr_min * 2.0,
        "incremental medians should not depend on n: {pairs:?}"
    );
    println!(
        "PASS criterion 8c: baseline grows with n while incremental stays flat \
         (baseline ms {:?}, incremental ms {:?})",
        pairs.iter().map(|p| (p.1 * 1e3).round()).collect::<Vec<_>>(),
        pairs.iter().map(|p| (p.2 * 1e3).round()).collect::<Vec<_>>()
    );
}
