//! Automatic evaluation: the evaluation listener, the referential-success
//! criterion, disjoint train-split discipline, the accuracy experiment over
//! cluster test sets, and the top-50 containment analysis.

mod report;

pub use report::{
    summary_csv, table1_csv, trials_jsonl, ContainmentSummary, ExperimentReport, TestSetReport,
    VariantSummary,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::core::{
    Corpus, Distribution, Granularity, Item, PartialCaption, RSAConfig, SpeakerPrior, WorldSet,
};
use crate::error::{Error, Result};
use crate::par;
use crate::rsa::{unroll_beam, SpeakerKind};
use crate::speaker::{prefix_log_prob, train_ngram, ConditionalSequenceModel, NGramConfig, NGramModel};
use crate::synth::SplitMix64;
use crate::core::Alphabet;

/// A test-set cluster: exactly ten distinct items. Each item is designated
/// target in turn, yielding ten trials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    id: String,
    items: Vec<Item>,
}

impl Cluster {
    pub const SIZE: usize = 10;

    pub fn new(id: String, items: Vec<Item>) -> Result<Self> {
        if items.len() != Self::SIZE {
            return Err(Error::InvalidWorld(format!(
                "cluster needs exactly {} items, got {}",
                Self::SIZE,
                items.len()
            )));
        }
        let distinct: HashSet<&str> = items.iter().map(|i| i.id.as_str()).collect();
        if distinct.len() != items.len() {
            return Err(Error::InvalidWorld("cluster items must be distinct".into()));
        }
        Ok(Cluster { id, items })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn world(&self) -> WorldSet {
        WorldSet::new(self.items.clone()).expect("cluster invariants imply a valid world")
    }
}

/// Outcome of one (cluster, target, variant) trial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialResult {
    pub cluster_id: String,
    pub target_index: usize,
    pub target_id: String,
    pub variant: String,
    pub caption: String,
    pub eval_posterior: Vec<f64>,
    /// True iff the target holds strictly more posterior mass than every
    /// distractor; exact ties count as failure.
    pub success: bool,
    pub truncated: bool,
}

/// One speaker configuration to evaluate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariantSpec {
    pub label: String,
    pub kind: SpeakerKind,
    pub config: RSAConfig,
}

/// Harness parameters for one experiment call: n-gram hyperparameters, the
/// granularity both models share, the variants to run, and the recorded
/// corpus-split seed.
#[derive(Debug, Clone)]
pub struct ExperimentSetup {
    pub granularity: Granularity,
    pub ngram: NGramConfig,
    pub variants: Vec<VariantSpec>,
    pub split_seed: u64,
    pub threads: usize,
}

/// The two models of the split-training discipline plus the optional
/// item-blind language model for the external-prior variant.
pub struct TrainedModels {
    pub production: NGramModel,
    pub evaluation: NGramModel,
    pub lm: Option<NGramModel>,
}

/// Accuracy outcome for one variant.
#[derive(Debug, Clone)]
pub struct VariantOutcome {
    pub label: String,
    pub results: Vec<TrialResult>,
}

impl VariantOutcome {
    pub fn trials(&self) -> usize {
        self.results.len()
    }

    pub fn successes(&self) -> usize {
        self.results.iter().filter(|r| r.success).count()
    }

    pub fn accuracy(&self) -> f64 {
        if self.results.is_empty() {
            0.0
        } else {
            self.successes() as f64 / self.trials() as f64
        }
    }
}

/// Everything an experiment run produces: the trained models (reused by the
/// containment analysis) and per-variant trial results.
pub struct ExperimentOutcome {
    pub models: TrainedModels,
    pub variants: Vec<VariantOutcome>,
}

/// Deterministically shuffle the corpus with the pinned generator and split
/// it into two disjoint halves (sizes differ by at most one; the first half
/// is the larger on odd sizes). Every caption lands in exactly one half.
pub fn split_corpus(corpus: &[(Item, String)], seed: u64) -> Result<(Corpus, Corpus)> {
    if corpus.len() < 2 {
        return Err(Error::CorpusTooSmall(corpus.len()));
    }
    let mut indices: Vec<usize> = (0..corpus.len()).collect();
    SplitMix64::new(seed).shuffle(&mut indices);
    let half = corpus.len().div_ceil(2);
    let production = indices[..half].iter().map(|&i| corpus[i].clone()).collect();
    let evaluation = indices[half..].iter().map(|&i| corpus[i].clone()).collect();
    Ok((production, evaluation))
}

/// The evaluation listener: Bayes over per-item chain-rule caption
/// probabilities with a uniform item prior, computed stably in log space.
///
/// The evaluation model must be trained on the evaluation half only;
/// otherwise the producing speaker is scored by a listener that has seen its
/// training data.
pub fn l_eval<M: ConditionalSequenceModel + ?Sized>(
    eval_model: &M,
    world: &WorldSet,
    caption: &PartialCaption,
) -> Result<Distribution> {
    let logs: Vec<f64> = world
        .items()
        .iter()
        .map(|item| prefix_log_prob(eval_model, item, caption))
        .collect();
    Distribution::from_log_weights(&logs)
}

/// Strict referential success: the target outweighs every distractor.
pub fn is_success(posterior: &Distribution, target: usize) -> bool {
    (0..posterior.len()).all(|j| j == target || posterior.get(target) > posterior.get(j))
}

/// Train the production/evaluation pair (and the item-blind LM when some
/// variant needs an external prior) on a shared alphabet built from the
/// union of both corpus halves.
pub fn train_split_models(
    production_corpus: &[(Item, String)],
    evaluation_corpus: &[(Item, String)],
    granularity: Granularity,
    ngram: NGramConfig,
    need_lm: bool,
) -> Result<TrainedModels> {
    let all_captions = production_corpus
        .iter()
        .chain(evaluation_corpus.iter())
        .map(|(_, c)| c.as_str());
    let alphabet = match granularity {
        Granularity::Character => Alphabet::char_from_corpus(all_captions)?,
        Granularity::Word => Alphabet::word_from_corpus(all_captions)?,
    };
    let production = train_ngram(production_corpus, &alphabet, ngram)?;
    let evaluation = train_ngram(evaluation_corpus, &alphabet, ngram)?;
    let lm = if need_lm {
        // Item-blind prior: lambda 0 drops the attribute component. Trained
        // on the production half so the evaluation half stays unseen by the
        // producing side.
        let mut lm_config = ngram;
        lm_config.lambda = 0.0;
        Some(train_ngram(production_corpus, &alphabet, lm_config)?)
    } else {
        None
    };
    Ok(TrainedModels {
        production,
        evaluation,
        lm,
    })
}

/// Run one variant over every (cluster, target) pair: generate the top beam
/// caption with the production model, score it with the evaluation listener,
/// and record strict success. Trials are independent; they may run on
/// several threads, and the result order is the sequential order.
pub fn run_trials(
    models: &TrainedModels,
    clusters: &[Cluster],
    variant: &VariantSpec,
    threads: usize,
) -> Result<VariantOutcome> {
    if models.production.alphabet() != models.evaluation.alphabet() {
        return Err(Error::GranularityMismatch(
            "production and evaluation models must share an alphabet".into(),
        ));
    }
    let trials: Vec<(usize, usize)> = (0..clusters.len())
        .flat_map(|c| (0..Cluster::SIZE).map(move |t| (c, t)))
        .collect();
    let lm: Option<&dyn ConditionalSequenceModel> = match variant.config.speaker_prior {
        SpeakerPrior::ExternalLm => Some(models.lm.as_ref().ok_or(Error::MissingLm)?),
        SpeakerPrior::S0Constrained => None,
    };
    let results: Vec<Result<TrialResult>> = par::parallel_map(&trials, threads, |&(c, t)| {
        let cluster = &clusters[c];
        let world = cluster.world();
        let hyps = unroll_beam(
            variant.kind,
            &models.production,
            &world,
            t,
            &variant.config,
            lm,
        )?;
        let top = hyps.first().ok_or(Error::EmptyBeam)?;
        let posterior = l_eval(&models.evaluation, &world, &top.caption)?;
        Ok(TrialResult {
            cluster_id: cluster.id().to_string(),
            target_index: t,
            target_id: cluster.items()[t].id.clone(),
            variant: variant.label.clone(),
            caption: top.caption.render(models.production.alphabet()),
            success: is_success(&posterior, t),
            eval_posterior: posterior.mass().to_vec(),
            truncated: top.truncated,
        })
    });
    let results: Vec<TrialResult> = results.into_iter().collect::<Result<_>>()?;
    Ok(VariantOutcome {
        label: variant.label.clone(),
        results,
    })
}

/// Train on the two disjoint halves and run every variant over the clusters.
pub fn run_experiment(
    clusters: &[Cluster],
    production_corpus: &[(Item, String)],
    evaluation_corpus: &[(Item, String)],
    setup: &ExperimentSetup,
) -> Result<ExperimentOutcome> {
    if clusters.is_empty() {
        return Err(Error::InvalidConfig("no clusters to evaluate".into()));
    }
    // Guard against the self-communication confound: a speaker must not be
    // scored by a listener trained on its own corpus. Template corpora can
    // repeat (item, caption) values across a legitimate instance-level
    // split, so the check is for wholesale reuse, not value overlap.
    let key = |corpus: &[(Item, String)]| {
        let mut pairs: Vec<(String, String)> = corpus
            .iter()
            .map(|(i, c)| (i.id.clone(), c.clone()))
            .collect();
        pairs.sort();
        pairs
    };
    if key(production_corpus) == key(evaluation_corpus) {
        return Err(Error::InvalidConfig(
            "production and evaluation corpora are identical; split the corpus first".into(),
        ));
    }
    let need_lm = setup
        .variants
        .iter()
        .any(|v| v.config.speaker_prior == SpeakerPrior::ExternalLm);
    let models = train_split_models(
        production_corpus,
        evaluation_corpus,
        setup.granularity,
        setup.ngram,
        need_lm,
    )?;
    let mut variants = Vec::with_capacity(setup.variants.len());
    for variant in &setup.variants {
        variants.push(run_trials(&models, clusters, variant, setup.threads)?);
    }
    Ok(ExperimentOutcome { models, variants })
}

/// Containment counts: of the trials where the pragmatic caption succeeded
/// and the literal one failed, how many pragmatic captions were absent from
/// the width-50 literal beam for the same target.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ContainmentStat {
    pub qualifying: usize,
    pub outside_beam: usize,
}

impl ContainmentStat {
    pub fn fraction(&self) -> f64 {
        self.outside_beam as f64 / self.qualifying as f64
    }
}

pub const CONTAINMENT_BEAM_WIDTH: usize = 50;

/// Compute the containment statistic over paired literal/pragmatic trials on
/// identical targets. Errors with [`Error::NoQualifyingTrials`] when no trial
/// qualifies (the statistic is undefined, not zero).
pub fn top50_containment<M: ConditionalSequenceModel + ?Sized>(
    s0: &VariantOutcome,
    s1: &VariantOutcome,
    production: &M,
    clusters: &[Cluster],
    config: &RSAConfig,
    threads: usize,
) -> Result<ContainmentStat> {
    if s0.results.len() != s1.results.len() {
        return Err(Error::SupportMismatch {
            left: s0.results.len(),
            right: s1.results.len(),
        });
    }
    let mut qualifying: Vec<(usize, usize, String)> = Vec::new();
    for (r0, r1) in s0.results.iter().zip(&s1.results) {
        if r0.cluster_id != r1.cluster_id || r0.target_index != r1.target_index {
            return Err(Error::InvalidConfig(
                "containment needs paired trials on identical targets".into(),
            ));
        }
        if r1.success && !r0.success {
            let c = clusters
                .iter()
                .position(|c| c.id() == r1.cluster_id)
                .ok_or_else(|| Error::UnknownItem(r1.cluster_id.clone()))?;
            qualifying.push((c, r1.target_index, r1.caption.clone()));
        }
    }
    if qualifying.is_empty() {
        return Err(Error::NoQualifyingTrials);
    }
    let mut wide = config.clone();
    wide.beam_width = CONTAINMENT_BEAM_WIDTH;
    let outside: Vec<Result<bool>> = par::parallel_map(&qualifying, threads, |(c, t, caption)| {
        let world = clusters[*c].world();
        let hyps = unroll_beam(SpeakerKind::S0, production, &world, *t, &wide, None)?;
        let alphabet = production.alphabet();
        Ok(!hyps
            .iter()
            .any(|h| &h.caption.render(alphabet) == caption))
    });
    let mut outside_beam = 0;
    for o in outside {
        if o? {
            outside_beam += 1;
        }
    }
    Ok(ContainmentStat {
        qualifying: qualifying.len(),
        outside_beam,
    })
}
