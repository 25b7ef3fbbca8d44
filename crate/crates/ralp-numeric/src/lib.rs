//! Numeric literal prediction: retrieve context around a
//! `(subject, data-property)` query, ask the LM for a point estimate
//! with calibration bounds, and score coverage/sharpness per property.

mod context;
mod metrics;
mod predict;
mod report;

pub use context::{format_value, render_context, retrieve_context, ContextBundle, NumericQuery};
pub use metrics::{
    filter_outliers, interval_metrics, mean_absolute_error, mean_squared_error,
    select_property_subset,
};
pub use predict::{default_numeric_state, parse_interval, predict_numeric, IntervalPrediction};
pub use report::{property_row, PropertyRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("prediction/truth lengths differ: {preds} vs {truths}")]
    LengthMismatch { preds: usize, truths: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("subset of {requested} properties exceeds the {available} available")]
    SubsetTooLarge { requested: usize, available: usize },

    #[error("could not parse a numeric interval from LM output: {raw:?}")]
    OutputParse { raw: String },

    #[error(transparent)]
    Prompt(#[from] ralp_prompt::PromptError),

    #[error(transparent)]
    Gateway(#[from] ralp_lm::LmError),
}

/// Interval prediction at the default precision.
pub type IntervalPredictionF64 = IntervalPrediction<f64>;
