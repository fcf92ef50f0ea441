//! Command-line entry point: data generation, training, captioning,
//! evaluation, benchmarks, and the worked two-bus demo.
//!
//! Every command is deterministic given its config document (timing values
//! in `bench` excepted). `PRAGMA_DECODE_THREADS` caps internal parallelism;
//! outputs do not depend on it.

mod config;
mod data;

pub use config::{load_config, BenchSection, RsaSection, RunConfig, SynthSection};
pub use data::{
    clusters_json, content_hash, corpus_jsonl, items_jsonl, parse_clusters_json,
    parse_corpus_jsonl, parse_items_jsonl, write_file,
};

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    build_fixture, caption_seconds, linear_fit, median, per_step_vs_world_size,
    rerank_vs_incremental, seconds_per_step,
};
use crate::core::{
    BeliefState, Corpus, Granularity, Item, PriorMode, SpeakerPrior, WorldSet,
};
use crate::error::{Error, Result};
use crate::eval::{
    run_trials, split_corpus, top50_containment, train_split_models, Cluster, ContainmentSummary,
    ExperimentReport, TestSetReport, TrialResult, VariantOutcome, VariantSpec, VariantSummary,
};
use crate::par;
use crate::rsa::{classic_rsa, trace_caption, unroll_beam, unroll_greedy, SpeakerKind, StepTrace};
use crate::speaker::{red_bus_world, ConditionalSequenceModel, NGramModel};
use crate::synth::{
    build_clusters_caption_overlap, build_clusters_shared_category, generate_corpus,
    generate_items,
};

#[derive(Parser)]
#[command(
    name = "pragma-decode",
    version,
    about = "Pragmatically informative caption generation and its evaluation harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the synthetic dataset files (items, corpus, both test sets)
    GenData(ConfigArgs),
    /// Train the split production/evaluation models and save them as JSON
    Train(ConfigArgs),
    /// Emit one caption for a target item within its cluster
    Caption(CaptionArgs),
    /// Run the accuracy experiment over both test sets and write reports
    Evaluate(ConfigArgs),
    /// Measure decoding latencies and write the timing CSV
    Bench(ConfigArgs),
    /// Print the worked two-bus reference game tables
    DemoRedbus(DemoArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Run-config JSON document; built-in defaults when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one config key: dotted.path=value (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl ConfigArgs {
    fn load(&self) -> Result<RunConfig> {
        load_config(self.config.as_deref(), &self.set)
    }
}

#[derive(Args)]
struct CaptionArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Target item id inside the cluster file
    #[arg(long)]
    target: String,
    /// Cluster JSON file (as written by gen-data)
    #[arg(long)]
    cluster_file: PathBuf,
    #[arg(long, value_enum, default_value_t = SpeakerArg::S1)]
    speaker: SpeakerArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Beam)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = GranularityArg::Char)]
    granularity: GranularityArg,
    /// Write the per-step JSONL trace here
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Machine-readable output instead of the tables
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpeakerArg {
    S0,
    S1,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Greedy,
    Beam,
}

#[derive(Clone, Copy, ValueEnum)]
enum GranularityArg {
    Char,
    Word,
}

impl From<GranularityArg> for Granularity {
    fn from(g: GranularityArg) -> Self {
        match g {
            GranularityArg::Char => Granularity::Character,
            GranularityArg::Word => Granularity::Word,
        }
    }
}

/// Parse argv and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenData(args) => args.load().and_then(|cfg| cmd_gen_data(&cfg)),
        Command::Train(args) => args.load().and_then(|cfg| cmd_train(&cfg)),
        Command::Caption(args) => cmd_caption(&args),
        Command::Evaluate(args) => args.load().and_then(|cfg| cmd_evaluate(&cfg)),
        Command::Bench(args) => args.load().and_then(|cfg| cmd_bench(&cfg)),
        Command::DemoRedbus(args) => cmd_demo_redbus(args.alpha, args.json),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// The generated dataset, before or instead of touching the filesystem.
pub struct Dataset {
    pub items: Vec<Item>,
    pub corpus: Vec<(Item, String)>,
    pub ts1: Vec<Cluster>,
    pub ts2: Vec<Cluster>,
}

/// Generate the full dataset for a config, in memory.
pub fn generate_dataset(cfg: &RunConfig) -> Result<Dataset> {
    let items = generate_items(&cfg.synth.schema, cfg.synth.item_count, cfg.items_seed());
    let corpus = generate_corpus(
        &items,
        &cfg.synth.grammar,
        cfg.synth.captions_per_item,
        cfg.corpus_seed(),
    )?;
    let ts1 = build_clusters_shared_category(
        &items,
        &cfg.synth.category_attribute,
        cfg.synth.clusters_per_test_set,
        cfg.ts1_seed(),
    )?;
    let ts2 =
        build_clusters_caption_overlap(&corpus, cfg.synth.clusters_per_test_set, cfg.ts2_seed())?;
    Ok(Dataset {
        items,
        corpus,
        ts1,
        ts2,
    })
}

fn cmd_gen_data(cfg: &RunConfig) -> Result<()> {
    let dataset = generate_dataset(cfg)?;
    let out = &cfg.out_dir;
    let items_text = items_jsonl(&dataset.items)?;
    let corpus_text = corpus_jsonl(&dataset.corpus)?;
    let ts1_text = clusters_json(&dataset.ts1)?;
    let ts2_text = clusters_json(&dataset.ts2)?;
    write_file(&out.join("items.jsonl"), &items_text)?;
    write_file(&out.join("corpus.jsonl"), &corpus_text)?;
    write_file(&out.join("clusters_ts1.json"), &ts1_text)?;
    write_file(&out.join("clusters_ts2.json"), &ts2_text)?;
    println!(
        "wrote {} items, {} captions, {}+{} clusters under {}",
        dataset.items.len(),
        dataset.corpus.len(),
        dataset.ts1.len(),
        dataset.ts2.len(),
        out.display()
    );
    Ok(())
}

fn read_dataset_files(cfg: &RunConfig) -> Result<(Vec<Item>, Corpus)> {
    let items_path = cfg.out_dir.join("items.jsonl");
    let corpus_path = cfg.out_dir.join("corpus.jsonl");
    if !items_path.exists() || !corpus_path.exists() {
        return Err(Error::InvalidConfig(format!(
            "dataset files missing under {}; run `pragma-decode gen-data` first",
            cfg.out_dir.display()
        )));
    }
    let items = parse_items_jsonl(&std::fs::read_to_string(items_path)?)?;
    let corpus = parse_corpus_jsonl(&std::fs::read_to_string(corpus_path)?, &items)?;
    Ok((items, corpus))
}

fn model_path(cfg: &RunConfig, granularity: Granularity, role: &str) -> PathBuf {
    cfg.out_dir.join("models").join(format!("{granularity}_{role}.json"))
}

fn cmd_train(cfg: &RunConfig) -> Result<()> {
    let (_, corpus) = read_dataset_files(cfg)?;
    let (production, evaluation) = split_corpus(&corpus, cfg.split_seed())?;
    for granularity in [Granularity::Character, Granularity::Word] {
        let ngram = match granularity {
            Granularity::Character => cfg.ngram_char,
            Granularity::Word => cfg.ngram_word,
        };
        let need_lm = granularity == Granularity::Character;
        let models = train_split_models(&production, &evaluation, granularity, ngram, need_lm)?;
        write_file(
            &model_path(cfg, granularity, "production"),
            &models.production.to_json()?,
        )?;
        write_file(
            &model_path(cfg, granularity, "evaluation"),
            &models.evaluation.to_json()?,
        )?;
        if let Some(lm) = &models.lm {
            write_file(&model_path(cfg, granularity, "lm"), &lm.to_json()?)?;
        }
        println!(
            "trained {granularity} models on {}/{} captions",
            production.len(),
            evaluation.len()
        );
    }
    Ok(())
}

fn write_trace(path: &Path, steps: &[StepTrace]) -> Result<()> {
    let mut out = String::new();
    for step in steps {
        out.push_str(&serde_json::to_string(step)?);
        out.push('\n');
    }
    write_file(path, &out)
}

fn cmd_caption(args: &CaptionArgs) -> Result<()> {
    let cfg = args.config.load()?;
    let granularity: Granularity = args.granularity.into();
    let (items, _) = read_dataset_files(&cfg)?;
    let clusters = parse_clusters_json(&std::fs::read_to_string(&args.cluster_file)?, &items)?;
    let cluster = clusters
        .iter()
        .find(|c| c.items().iter().any(|i| i.id == args.target))
        .ok_or_else(|| Error::UnknownItem(args.target.clone()))?;
    let world = cluster.world();
    let target = world
        .index_of(&args.target)
        .expect("target is in the cluster");

    let path = model_path(&cfg, granularity, "production");
    if !path.exists() {
        return Err(Error::InvalidConfig(format!(
            "model file {} missing; run `pragma-decode train` first",
            path.display()
        )));
    }
    let model = NGramModel::load(&path)?;
    if model.alphabet().granularity() != granularity {
        return Err(Error::GranularityMismatch(format!(
            "model file {} is not a {granularity} model",
            path.display()
        )));
    }

    let kind = match args.speaker {
        SpeakerArg::S0 => SpeakerKind::S0,
        SpeakerArg::S1 => SpeakerKind::S1,
    };
    let rsa_config = cfg.rsa.config(granularity);
    let (caption, steps) = match args.mode {
        ModeArg::Greedy => unroll_greedy(kind, &model, &world, target, &rsa_config, None)?,
        ModeArg::Beam => {
            let hyps = unroll_beam(kind, &model, &world, target, &rsa_config, None)?;
            let top = hyps.into_iter().next().ok_or(Error::EmptyBeam)?;
            let steps =
                trace_caption(kind, &model, &world, target, &rsa_config, None, &top.caption)?;
            (top.caption, steps)
        }
    };
    if let Some(trace_path) = &args.trace {
        write_trace(trace_path, &steps)?;
    }
    if !caption.ends_with_eos() {
        eprintln!("note: caption hit the length cap without EOS");
    }
    println!("{}", caption.render(model.alphabet()));
    Ok(())
}

const CHAR_CORE_VARIANTS: [&str; 2] = ["char-s0", "char-s1"];
const TABLE_VARIANTS: [&str; 4] = ["char-s0", "char-s1", "word-s0", "word-s1"];

/// The standard variant grid: literal and pragmatic speakers at both
/// granularities, plus the two pragmatic ablations (external LM prior,
/// uniform-reset listener prior) at the character level.
pub fn standard_variants(cfg: &RunConfig, granularity: Granularity) -> Vec<VariantSpec> {
    let base = cfg.rsa.config(granularity);
    match granularity {
        Granularity::Character => {
            let mut lm_prior = base.clone();
            lm_prior.speaker_prior = SpeakerPrior::ExternalLm;
            let mut uniform_reset = base.clone();
            uniform_reset.prior_mode = PriorMode::UniformReset;
            vec![
                VariantSpec {
                    label: "char-s0".into(),
                    kind: SpeakerKind::S0,
                    config: base.clone(),
                },
                VariantSpec {
                    label: "char-s1".into(),
                    kind: SpeakerKind::S1,
                    config: base,
                },
                VariantSpec {
                    label: "char-s1-lm-prior".into(),
                    kind: SpeakerKind::S1,
                    config: lm_prior,
                },
                VariantSpec {
                    label: "char-s1-uniform-reset".into(),
                    kind: SpeakerKind::S1,
                    config: uniform_reset,
                },
            ]
        }
        Granularity::Word => vec![
            VariantSpec {
                label: "word-s0".into(),
                kind: SpeakerKind::S0,
                config: base.clone(),
            },
            VariantSpec {
                label: "word-s1".into(),
                kind: SpeakerKind::S1,
                config: base,
            },
        ],
    }
}

/// Everything `evaluate` computes, before any file is written.
pub struct EvaluateArtifacts {
    pub report: ExperimentReport,
    pub trials: Vec<TrialResult>,
    pub summary_csv: String,
    pub table1_csv: String,
}

/// Run the full evaluation for a config: generate the dataset, split and
/// train, run every variant on both test sets, and compute the containment
/// analysis for the character-level pair.
pub fn evaluate_config(cfg: &RunConfig) -> Result<EvaluateArtifacts> {
    let threads = par::thread_count();
    let dataset = generate_dataset(cfg)?;
    let (production, evaluation) = split_corpus(&dataset.corpus, cfg.split_seed())?;

    let char_models = train_split_models(
        &production,
        &evaluation,
        Granularity::Character,
        cfg.ngram_char,
        true,
    )?;
    let word_models = train_split_models(
        &production,
        &evaluation,
        Granularity::Word,
        cfg.ngram_word,
        false,
    )?;

    let char_variants = standard_variants(cfg, Granularity::Character);
    let word_variants = standard_variants(cfg, Granularity::Word);

    let mut summaries: Vec<VariantSummary> = Vec::new();
    let mut trials: Vec<TrialResult> = Vec::new();
    let mut containment: Vec<ContainmentSummary> = Vec::new();
    let mut test_sets: Vec<TestSetReport> = Vec::new();

    for (name, clusters) in [("ts1", &dataset.ts1), ("ts2", &dataset.ts2)] {
        let mut per_set: Vec<VariantSummary> = Vec::new();
        let mut char_pair: BTreeMap<&str, VariantOutcome> = BTreeMap::new();
        for (models, variants) in [
            (&char_models, &char_variants),
            (&word_models, &word_variants),
        ] {
            for variant in variants.iter() {
                let outcome = run_trials(models, clusters, variant, threads)?;
                per_set.push(VariantSummary {
                    variant: outcome.label.clone(),
                    test_set: name.into(),
                    trials: outcome.trials(),
                    successes: outcome.successes(),
                    accuracy: outcome.accuracy(),
                });
                trials.extend(outcome.results.iter().cloned());
                if CHAR_CORE_VARIANTS.contains(&outcome.label.as_str()) {
                    char_pair.insert(
                        if outcome.label == "char-s0" { "s0" } else { "s1" },
                        outcome,
                    );
                }
            }
        }
        let stat = top50_containment(
            &char_pair["s0"],
            &char_pair["s1"],
            &char_models.production,
            clusters,
            &cfg.rsa.config(Granularity::Character),
            threads,
        );
        containment.push(match stat {
            Ok(s) => ContainmentSummary {
                test_set: name.into(),
                qualifying: s.qualifying,
                outside_beam: s.outside_beam,
                fraction: Some(s.fraction()),
            },
            Err(Error::NoQualifyingTrials) => ContainmentSummary {
                test_set: name.into(),
                qualifying: 0,
                outside_beam: 0,
                fraction: None,
            },
            Err(e) => return Err(e),
        });
        test_sets.push(TestSetReport {
            name: name.into(),
            clusters: clusters.len(),
            variants: per_set.clone(),
        });
        summaries.extend(per_set);
    }

    let mut dataset_hashes = BTreeMap::new();
    dataset_hashes.insert(
        "items.jsonl".to_string(),
        content_hash(items_jsonl(&dataset.items)?.as_bytes()),
    );
    dataset_hashes.insert(
        "corpus.jsonl".to_string(),
        content_hash(corpus_jsonl(&dataset.corpus)?.as_bytes()),
    );
    dataset_hashes.insert(
        "clusters_ts1.json".to_string(),
        content_hash(clusters_json(&dataset.ts1)?.as_bytes()),
    );
    dataset_hashes.insert(
        "clusters_ts2.json".to_string(),
        content_hash(clusters_json(&dataset.ts2)?.as_bytes()),
    );

    let report = ExperimentReport {
        seed: cfg.seed,
        config: cfg.snapshot()?,
        dataset_hashes,
        test_sets,
        containment,
    };
    let summary = crate::eval::summary_csv(&summaries);
    let table1 = crate::eval::table1_csv(&summaries, &TABLE_VARIANTS);
    Ok(EvaluateArtifacts {
        report,
        trials,
        summary_csv: summary,
        table1_csv: table1,
    })
}

fn cmd_evaluate(cfg: &RunConfig) -> Result<()> {
    let artifacts = evaluate_config(cfg)?;
    let out = &cfg.out_dir;
    write_file(
        &out.join("report.json"),
        &serde_json::to_string_pretty(&artifacts.report)?,
    )?;
    write_file(
        &out.join("trials.jsonl"),
        &crate::eval::trials_jsonl(&artifacts.trials)?,
    )?;
    write_file(&out.join("summary.csv"), &artifacts.summary_csv)?;
    write_file(&out.join("table1.csv"), &artifacts.table1_csv)?;
    println!("{}", artifacts.summary_csv.trim_end());
    for c in &artifacts.report.containment {
        match c.fraction {
            Some(f) => println!(
                "containment {}: {}/{} = {:.3}",
                c.test_set, c.outside_beam, c.qualifying, f
            ),
            None => println!("containment {}: undefined (no qualifying trials)", c.test_set),
        }
    }
    println!("reports written under {}", out.display());
    Ok(())
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BenchRow {
    pub benchmark: String,
    pub granularity: String,
    pub param: u64,
    pub metric: String,
    pub value: f64,
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("benchmark,granularity,param,metric,value\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.9}\n",
            r.benchmark, r.granularity, r.param, r.metric, r.value
        ));
    }
    out
}

fn cmd_bench(cfg: &RunConfig) -> Result<()> {
    let bench = &cfg.bench;
    let fixture = build_fixture(
        cfg.seed,
        bench.fixture_categories,
        bench.fixture_colors,
        bench.fixture_items,
    )?;
    let char_cfg = cfg.rsa.config(Granularity::Character);
    let word_cfg = cfg.rsa.config(Granularity::Word);
    let mut rows: Vec<BenchRow> = Vec::new();

    // Per-step pragmatic latency as the world grows (character model).
    let scaling = per_step_vs_world_size(
        &fixture.char_model,
        &fixture,
        &bench.world_sizes,
        &char_cfg,
        bench.repetitions,
        bench.min_steps,
    )?;
    for &(w, secs) in &scaling {
        rows.push(BenchRow {
            benchmark: "per_step_vs_world".into(),
            granularity: "char".into(),
            param: w as u64,
            metric: "seconds_per_step".into(),
            value: secs,
        });
    }
    let fit = linear_fit(
        &scaling
            .iter()
            .map(|&(w, s)| (w as f64, s))
            .collect::<Vec<_>>(),
    );
    rows.push(BenchRow {
        benchmark: "per_step_vs_world_fit".into(),
        granularity: "char".into(),
        param: 0,
        metric: "r_squared".into(),
        value: fit.r_squared,
    });

    // Character versus word per-step cost at one world size.
    let w = bench.world_sizes[bench.world_sizes.len() / 2];
    let world = fixture.world(w);
    for (label, secs) in [
        (
            "char",
            median(
                &(0..bench.repetitions)
                    .map(|_| {
                        seconds_per_step(
                            SpeakerKind::S1,
                            &fixture.char_model,
                            &world,
                            &char_cfg,
                            bench.min_steps,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        ),
        (
            "word",
            median(
                &(0..bench.repetitions)
                    .map(|_| {
                        seconds_per_step(
                            SpeakerKind::S1,
                            &fixture.word_model,
                            &world,
                            &word_cfg,
                            bench.min_steps,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        ),
    ] {
        rows.push(BenchRow {
            benchmark: "per_step_by_granularity".into(),
            granularity: label.into(),
            param: w as u64,
            metric: "seconds_per_step".into(),
            value: secs,
        });
    }

    // Per-step cost against vocabulary size (word models, growing inventory).
    for &categories in &bench.vocab_steps {
        let vocab_fixture = build_fixture(
            cfg.seed.wrapping_add(categories as u64),
            categories,
            categories / 4 + 2,
            bench.fixture_items.min(categories * 4),
        )?;
        let world = vocab_fixture.world(w.min(vocab_fixture.items.len()));
        let samples: Vec<f64> = (0..bench.repetitions)
            .map(|_| {
                seconds_per_step(
                    SpeakerKind::S1,
                    &vocab_fixture.word_model,
                    &world,
                    &word_cfg,
                    bench.min_steps,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(BenchRow {
            benchmark: "per_step_vs_vocab".into(),
            granularity: "word".into(),
            param: vocab_fixture.word_model.alphabet().len() as u64,
            metric: "seconds_per_step".into(),
            value: median(&samples),
        });
    }

    // End-to-end caption latency, beam decoding, both granularities.
    for (label, model) in [
        ("char", &fixture.char_model as &dyn ConditionalSequenceModel),
        ("word", &fixture.word_model as &dyn ConditionalSequenceModel),
    ] {
        let rsa_cfg = if label == "char" { &char_cfg } else { &word_cfg };
        let samples: Vec<f64> = (0..bench.repetitions)
            .map(|_| caption_seconds(SpeakerKind::S1, model, &world, 0, rsa_cfg))
            .collect::<Result<Vec<_>>>()?;
        rows.push(BenchRow {
            benchmark: "caption_end_to_end".into(),
            granularity: label.into(),
            param: w as u64,
            metric: "seconds".into(),
            value: median(&samples),
        });
    }

    // Sample-then-infer baseline versus incremental decoding as n grows.
    let pairs = rerank_vs_incremental(
        &fixture.char_model,
        &world,
        0,
        &bench.rerank_ns,
        &char_cfg,
        bench.repetitions,
    )?;
    for &(n, rerank_secs, incremental_secs) in &pairs {
        rows.push(BenchRow {
            benchmark: "rerank_vs_incremental".into(),
            granularity: "char".into(),
            param: n as u64,
            metric: "rerank_seconds".into(),
            value: rerank_secs,
        });
        rows.push(BenchRow {
            benchmark: "rerank_vs_incremental".into(),
            granularity: "char".into(),
            param: n as u64,
            metric: "incremental_seconds".into(),
            value: incremental_secs,
        });
    }

    let csv = bench_csv(&rows);
    write_file(&cfg.out_dir.join("bench.csv"), &csv)?;
    println!("{}", csv.trim_end());
    println!("world-scaling fit: r^2 = {:.4}", fit.r_squared);
    Ok(())
}

fn cmd_demo_redbus(alpha: f64, json: bool) -> Result<()> {
    let start = Instant::now();
    let model = red_bus_world();
    let world = WorldSet::new(vec![
        Item::new("target-red-bus")
            .with_attr("category", "bus")
            .with_attr("color", "red"),
        Item::new("distractor-bus")
            .with_attr("category", "bus")
            .with_attr("color", "green"),
    ])?;
    let prior = BeliefState::uniform(world.len())?;
    let out = classic_rsa(&model, &world, &prior, alpha)?;

    if json {
        let doc = serde_json::json!({
            "alpha": alpha,
            "utterances": model.utterances(),
            "items": model.item_ids(),
            "l0": out.l0.iter().map(|d| d.mass().to_vec()).collect::<Vec<_>>(),
            "s1": out.s1.iter().map(|d| d.mass().to_vec()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("Reference game: two buses, the target is the red one.");
        println!("U = {{bus, red bus}}, alpha = {alpha}\n");
        println!("L0(item | utterance)");
        println!("{:<12} {:>16} {:>16}", "utterance", "target-red-bus", "distractor-bus");
        for (u, utterance) in model.utterances().iter().enumerate() {
            println!(
                "{:<12} {:>16.6} {:>16.6}",
                utterance,
                out.l0[u].get(0),
                out.l0[u].get(1)
            );
        }
        println!("\nS1(utterance | item)");
        println!("{:<16} {:>10} {:>10}", "item", "bus", "red bus");
        for (w, id) in model.item_ids().iter().enumerate() {
            println!(
                "{:<16} {:>10.6} {:>10.6}",
                id,
                out.s1[w].get(0),
                out.s1[w].get(1)
            );
        }
    }
    let elapsed = start.elapsed();
    eprintln!("demo completed in {:.3}s", elapsed.as_secs_f64());
    Ok(())
}

