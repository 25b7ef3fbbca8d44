//! Gradient-free search over prompt states: instruction proposal, demo
//! subset sampling, the cross-entropy objective Q, a categorical TPE
//! surrogate, and the trial loop gluing them together.

mod optimize;
mod pool;
mod qeval;
mod tpe;
mod trial;

pub use optimize::{optimize, OptimizeConfig, OptimizeOutcome, Preset};
pub use pool::{
    propose_instruction_candidates, sample_demo_subsets, select_few_shot, CandidateKey,
    CandidatePool,
};
pub use qeval::{build_eval_panel, evaluate_q, LabeledExample};
pub use tpe::{key_ratio, startup_trials, suggest_key, suggest_next, TpeConfig};
pub use trial::{Mode, Trial, TrialHistory};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MiproError {
    #[error("candidate pool must not be empty")]
    EmptyPool,

    #[error("optimization needs at least one trial")]
    NoTrials,

    #[error("evaluation batch is empty")]
    EmptyBatch,

    #[error("demo subset of size {requested} exceeds the {available} available demos")]
    SubsetTooLarge { requested: usize, available: usize },

    #[error("objective evaluation failed: {0}")]
    Objective(String),

    #[error(transparent)]
    Pipeline(#[from] ralp_prompt::PromptError),

    #[error(transparent)]
    Gateway(#[from] ralp_lm::LmError),
}
