//! Interval prediction through the LM and parsing of its output.

use ralp_core::{KnowledgeGraph, Scalar};
use ralp_lm::{LmGateway, LmRequest};
use ralp_prompt::{default_instruction, initialize_prompt, parse, FieldSpec, PromptState, Signature};

use crate::context::{render_context, ContextBundle, NumericQuery};
use crate::NumericError;

/// Point prediction with calibration bounds, `y_min <= y_hat <= y_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalPrediction<F> {
    pub y_hat: F,
    pub y_min: F,
    pub y_max: F,
}

impl<F: Scalar> IntervalPrediction<F> {
    /// Enforce the ordering invariant, repairing violations: a flipped
    /// interval is swapped and an out-of-interval estimate is clamped,
    /// each with a warning.
    pub fn repaired(y_hat: F, y_min: F, y_max: F) -> (Self, Vec<String>) {
        let mut warnings = Vec::new();
        let (mut lo, mut hi) = (y_min, y_max);
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
            warnings.push(format!(
                "interval bounds arrived flipped ({} > {}); swapped",
                y_min, y_max
            ));
        }
        let mut hat = y_hat;
        if hat < lo || hat > hi {
            hat = hat.max(lo).min(hi);
            warnings.push(format!(
                "estimate {y_hat} outside [{lo}, {hi}]; clamped to {hat}"
            ));
        }
        (
            Self {
                y_hat: hat,
                y_min: lo,
                y_max: hi,
            },
            warnings,
        )
    }

    pub fn covers(&self, truth: F) -> bool {
        self.y_min <= truth && truth <= self.y_max
    }

    pub fn width(&self) -> F {
        self.y_max - self.y_min
    }
}

/// Prompt state wired for numeric prediction: the bundled numeric
/// instruction rides in the composer slot (the scorer stage is unused
/// by this task).
pub fn default_numeric_state(token_cap: usize) -> PromptState {
    let instruction = default_instruction("numeric").expect("bundled numeric instruction");
    PromptState {
        composer_instruction: instruction.clone(),
        scorer_instruction: instruction,
        composer_demos: Vec::new(),
        scorer_demos: Vec::new(),
        token_cap,
    }
}

fn numeric_signature(instruction: &str) -> Result<Signature, NumericError> {
    Ok(Signature::new(
        "numeric",
        vec![
            FieldSpec::new("context", "facts to reason over"),
            FieldSpec::new("subject", "the subject entity"),
            FieldSpec::new("property", "the numeric property to estimate"),
        ],
        vec![FieldSpec::new(
            "interval",
            "three lines: y_min: <number>, y: <number>, y_max: <number>",
        )],
        instruction,
    )?)
}

/// One LM call predicting `(y_min, y_hat, y_max)` for the query.
pub fn predict_numeric<F: Scalar>(
    gateway: &LmGateway,
    state: &PromptState,
    graph: &KnowledgeGraph,
    query: &NumericQuery,
    ctx: &ContextBundle,
) -> Result<(IntervalPrediction<F>, Vec<String>), NumericError> {
    let vocab = graph.vocab();
    let sig = numeric_signature(&state.composer_instruction)?;
    let prompt_query = vec![
        ("context".to_owned(), render_context(graph, ctx)),
        ("subject".to_owned(), vocab.entity_text(query.subject).to_owned()),
        (
            "property".to_owned(),
            vocab.relation_text(query.property).to_owned(),
        ),
    ];
    let prompt = initialize_prompt(
        &sig,
        &state.composer_demos,
        &prompt_query,
        state.token_cap,
        gateway.estimator(),
    )?;
    let response = gateway.complete(&LmRequest::from_prompt(prompt))?;
    let (hat, min, max) = parse_interval(&response.text)?;
    let (prediction, warnings) =
        IntervalPrediction::repaired(F::of(hat), F::of(min), F::of(max));
    Ok((prediction, warnings))
}

/// Parse `(y_hat, y_min, y_max)` from LM text: labeled lines win;
/// otherwise the last three bare numbers are read as (min, hat, max),
/// the order the output format requests.
pub fn parse_interval(text: &str) -> Result<(f64, f64, f64), NumericError> {
    // last labeled occurrence wins, so reasoning text cannot shadow the
    // final answer lines
    fn last_labeled(text: &str, labels: &[&str]) -> Option<f64> {
        let mut result = None;
        for line in text.lines() {
            let lower = line.trim().trim_start_matches(['-', '*', ' ']).to_lowercase();
            for label in labels {
                if let Some(rest) = lower.strip_prefix(label) {
                    let token: String = rest
                        .trim_start_matches([':', '=', ' ', '\t'])
                        .chars()
                        .take_while(|c| {
                            c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | ',')
                        })
                        .collect();
                    if let Some(v) = parse::parse_number(&token) {
                        result = Some(v);
                    }
                }
            }
        }
        result
    }

    let min = last_labeled(text, &["y_min", "ymin"]);
    let max = last_labeled(text, &["y_max", "ymax"]);
    let hat = last_labeled(text, &["y_hat", "yhat", "y"]);
    if let (Some(min), Some(hat), Some(max)) = (min, hat, max) {
        return Ok((hat, min, max));
    }

    let numbers: Vec<f64> = text
        .split(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | ';'))
        .filter_map(parse::parse_number)
        .collect();
    if numbers.len() >= 3 {
        let tail = &numbers[numbers.len() - 3..];
        return Ok((tail[1], tail[0], tail[2]));
    }
    Err(NumericError::OutputParse {
        raw: text.to_owned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_lines_parse_in_any_order() {
        let text = "Reasoning...\ny_min: 1000.0\ny: 7225.0\ny_max: 15000.0\n";
        assert_eq!(parse_interval(text).unwrap(), (7225.0, 1000.0, 15000.0));
    }

    #[test]
    fn bare_triple_reads_min_hat_max() {
        assert_eq!(parse_interval("5 5 5").unwrap(), (5.0, 5.0, 5.0));
        assert_eq!(parse_interval("1 2 3").unwrap(), (2.0, 1.0, 3.0));
    }

    #[test]
    fn non_numeric_output_is_a_parse_error() {
        let err = parse_interval("I cannot answer that.").unwrap_err();
        assert!(matches!(err, NumericError::OutputParse { .. }));
    }

    #[test]
    fn repair_swaps_flipped_bounds() {
        let (p, warnings) = IntervalPrediction::<f64>::repaired(5.0, 9.0, 1.0);
        assert_eq!((p.y_min, p.y_hat, p.y_max), (1.0, 5.0, 9.0));
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn repair_clamps_estimate_into_interval() {
        let (p, warnings) = IntervalPrediction::<f64>::repaired(20.0, 1.0, 9.0);
        assert_eq!(p.y_hat, 9.0);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn degenerate_interval_is_valid() {
        let (p, warnings) = IntervalPrediction::<f64>::repaired(5.0, 5.0, 5.0);
        assert_eq!((p.y_min, p.y_hat, p.y_max), (5.0, 5.0, 5.0));
        assert!(warnings.is_empty());
        assert!(p.covers(5.0));
    }
}
