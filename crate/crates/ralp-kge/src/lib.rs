//! Minimal embedding baseline for the augmentation experiments: a
//! bilinear-diagonal scorer, mini-batch Adam training under KvsAll or
//! negative sampling, ranking evaluation, and flat-file checkpoints.
//!
//! The scorer is deliberately a free function over [`EmbeddingTable`] so
//! other scoring families can slot in without touching the trainer.

mod adam;
mod checkpoint;
mod eval;
mod grad;
mod table;
mod train;

pub use adam::Adam;
pub use checkpoint::{load, save};
pub use eval::{evaluate, known_positives, EvalOutcome};
pub use grad::{
    binary_loss_and_grad, kvsall_loss_and_grad, BinaryExample, DropoutMasks, GradTable,
    KvsAllExample,
};
pub use table::{distmult_score, EmbeddingTable};
pub use train::{kvsall_examples, train, Strategy, TrainConfig, TrainStats};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KgeError {
    #[error("entity or relation id outside the embedding table")]
    IdOutOfRange,

    #[error("graph has no entity triples to train on")]
    EmptyGraph,

    #[error("loss became non-finite in epoch {epoch}; the learning rate is too high for this data")]
    NanLoss { epoch: usize },

    #[error("no rankable queries in the evaluation split")]
    NoRankableQueries,

    #[error("evaluation failed: {0}")]
    Eval(String),

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Embedding tables at the precisions used by the binaries: f32 for
/// checkpoints and training, f64 for gradient verification.
pub type EmbeddingTableF32 = EmbeddingTable<f32>;
pub type EmbeddingTableF64 = EmbeddingTable<f64>;
