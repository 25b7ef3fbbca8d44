//! The string-parameterized scoring program: signatures, few-shot
//! demos, the learnable [`PromptState`], prompt rendering, structured
//! output parsing, and the composer/scorer pipeline.

mod demo;
pub mod parse;
mod pipeline;
mod render;
mod signature;
mod state;

pub use demo::{Demo, KvsAllDemo};
pub use pipeline::{
    attach_demos, composer_demos, kvsall_demo_pool, scorer_demos, CandidatePrediction,
    ScorePipeline, ScoreScale,
};
pub use render::initialize_prompt;
pub use signature::{FieldSpec, Signature};
pub use state::{default_instruction, PromptState};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PromptError {
    #[error("signature `{signature}` has an empty instruction")]
    EmptyInstruction { signature: String },

    #[error("signature `{signature}` declares a duplicate field name")]
    DuplicateField { signature: String },

    #[error("prompt for `{signature}` needs {estimated} tokens even without demos (cap {cap})")]
    PromptTooLarge {
        signature: String,
        estimated: usize,
        cap: usize,
    },

    #[error("could not parse {what} from LM output: {raw:?}")]
    OutputParse { what: String, raw: String },

    #[error("malformed prompt state: {0}")]
    StateFormat(String),

    #[error(transparent)]
    Gateway(#[from] ralp_lm::LmError),
}
