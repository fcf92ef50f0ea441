use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weight vector is empty")]
    EmptySupport,
    #[error("all weights are zero after flooring")]
    AllZeroWeights,
    #[error("negative or non-finite weight: {0}")]
    InvalidWeight(f64),
    #[error("support sizes differ: {left} vs {right}")]
    SupportMismatch { left: usize, right: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid world: {0}")]
    InvalidWorld(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("malformed caption: {0}")]
    MalformedCaption(String),
    #[error("symbol not in alphabet: {0:?}")]
    UnknownSymbol(String),
    #[error("unknown item: {0:?}")]
    UnknownItem(String),
    #[error("speaker prior `external_lm` requires an LM model")]
    MissingLm,
    #[error("granularity mismatch: {0}")]
    GranularityMismatch(String),
    #[error("beam produced no hypotheses")]
    EmptyBeam,
    #[error("corpus too small: {0} entries")]
    CorpusTooSmall(usize),
    #[error("insufficient items: need {needed}, have {available}")]
    InsufficientItems { needed: usize, available: usize },
    #[error("template slot {slot:?} cannot be filled for item {item:?}")]
    SlotUnfillable { slot: String, item: String },
    #[error("no qualifying trials for containment statistic")]
    NoQualifyingTrials,
    #[error("model file: {0}")]
    ModelFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
