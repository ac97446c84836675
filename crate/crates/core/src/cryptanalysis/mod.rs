//! The attacker's side: rank-matching frequency analysis, dictionary
//! segmentation and an experiment runner that scores both against the
//! encodings of this crate. Attacks only ever see ciphertext and public
//! parameters, never a key bundle.

mod experiment;
mod rank;
mod segment;

use thiserror::Error;

pub use experiment::{
    run_experiment, Case, CaseResult, ExperimentConfig, ExperimentReport, MIN_CORPUS_LETTERS,
};
pub use rank::{rank_match_attack, score_grouped, score_recovery, AttackReport};
pub use segment::{dp_segment, greedy_segment, Decision, DpSegmentation, SegmentationResult};

#[derive(Debug, Error)]
pub enum CryptanalysisError {
    #[error("ciphertext has {cipher} symbols but the plaintext has {plain}")]
    LengthMismatch { cipher: usize, plain: usize },
    #[error("corpus has {letters} letters; at least {MIN_CORPUS_LETTERS} are needed")]
    CorpusTooSmall { letters: usize },
    #[error("group width must be in 1..=32, got {0}")]
    InvalidGroupWidth(usize),
    #[error(transparent)]
    Pipeline(#[from] crate::pipeline::PipelineError),
}
