//! Prompt rendering: instruction, format block, demos, then the query.
//!
//! Rendering is a pure function of its arguments. When the budget
//! overflows, demos are dropped from the end of the list one at a time;
//! the query itself is never dropped.

use ralp_lm::TokenEstimator;

use crate::{Demo, PromptError, Signature};

const SEPARATOR: &str = "---";

/// Render a prompt for `sig` with as many demos as fit under
/// `token_cap`. `query` holds the input-field values in signature order.
pub fn initialize_prompt(
    sig: &Signature,
    demos: &[Demo],
    query: &[(String, String)],
    token_cap: usize,
    estimator: &TokenEstimator,
) -> Result<String, PromptError> {
    for keep in (0..=demos.len()).rev() {
        let text = render(sig, &demos[..keep], query);
        if estimator.estimate(&text) <= token_cap {
            return Ok(text);
        }
    }
    let bare = render(sig, &[], query);
    Err(PromptError::PromptTooLarge {
        signature: sig.name.clone(),
        estimated: estimator.estimate(&bare),
        cap: token_cap,
    })
}

fn render(sig: &Signature, demos: &[Demo], query: &[(String, String)]) -> String {
    let mut out = String::new();
    out.push_str(sig.instruction.trim());
    out.push_str("\n\nFollow this format.\n\n");
    for field in sig.input_fields.iter().chain(&sig.output_fields) {
        out.push_str(&field.display_name());
        out.push_str(": ");
        out.push_str(&field.description);
        out.push('\n');
    }
    for demo in demos {
        out.push('\n');
        out.push_str(SEPARATOR);
        out.push_str("\n\n");
        for field in &sig.input_fields {
            if let Some(value) = demo.inputs.get(&field.name) {
                out.push_str(&field.display_name());
                out.push_str(": ");
                out.push_str(value);
                out.push('\n');
            }
        }
        for field in &sig.output_fields {
            if let Some(value) = demo.outputs.get(&field.name) {
                out.push_str(&field.display_name());
                out.push_str(": ");
                out.push_str(value);
                out.push('\n');
            }
        }
    }
    out.push('\n');
    out.push_str(SEPARATOR);
    out.push_str("\n\n");
    for (name, value) in query {
        let display = sig
            .input_fields
            .iter()
            .find(|f| &f.name == name)
            .map(|f| f.display_name())
            .unwrap_or_else(|| name.clone());
        out.push_str(&display);
        out.push_str(": ");
        out.push_str(value);
        out.push('\n');
    }
    if let Some(first_output) = sig.output_fields.first() {
        out.push_str(&first_output.display_name());
        out.push(':');
        out.push('\n');
    }
    out
}
