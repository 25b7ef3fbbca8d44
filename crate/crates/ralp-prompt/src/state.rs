//! The learnable string parameter: instructions and demo selections for
//! both pipeline stages, serialized as a human-readable text artifact.

use std::collections::BTreeMap;

use crate::{Demo, PromptError};

const HEADER: &str = "# ralp prompt state v1";

/// Instructions plus selected few-shot demos for the composer and
/// scorer stages, bounded by the backing model's context length.
#[derive(Clone, Debug, PartialEq)]
pub struct PromptState {
    pub composer_instruction: String,
    pub scorer_instruction: String,
    pub composer_demos: Vec<Demo>,
    pub scorer_demos: Vec<Demo>,
    /// Context budget in estimated tokens for any rendered prompt.
    pub token_cap: usize,
}

const DEFAULTS: &str = include_str!("../resources/default_prompts.txt");

/// Look up a section of the bundled default-instruction resource.
pub fn default_instruction(section: &str) -> Option<String> {
    let mut current: Option<String> = None;
    let mut body = String::new();
    let mut found: Option<String> = None;
    for line in DEFAULTS.lines() {
        if let Some(name) = section_marker(line) {
            if current.as_deref() == Some(section) {
                found = Some(body.trim().to_owned());
            }
            current = Some(name.to_owned());
            body.clear();
        } else if current.is_some() {
            body.push_str(line);
            body.push('\n');
        }
    }
    if current.as_deref() == Some(section) {
        found = Some(body.trim().to_owned());
    }
    found
}

fn section_marker(line: &str) -> Option<&str> {
    let line = line.trim();
    let inner = line.strip_prefix("=== ")?.strip_suffix(" ===")?;
    Some(inner)
}

impl PromptState {
    /// Zero-shot state with the bundled default instructions for a task
    /// domain (`"countries"` for the geography benchmarks, anything else
    /// falls back to the generic knowledge-graph instructions).
    pub fn default_for(domain: &str, token_cap: usize) -> Self {
        let composer = default_instruction(&format!("{domain}.composer"))
            .or_else(|| default_instruction("generic.composer"))
            .expect("bundled composer instruction");
        let scorer = default_instruction(&format!("{domain}.scorer"))
            .or_else(|| default_instruction("generic.scorer"))
            .expect("bundled scorer instruction");
        Self {
            composer_instruction: composer,
            scorer_instruction: scorer,
            composer_demos: Vec::new(),
            scorer_demos: Vec::new(),
            token_cap,
        }
    }

    /// Serialize to the versionable text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        out.push_str(&format!("token_cap: {}\n", self.token_cap));
        push_section(&mut out, "composer.instruction", &self.composer_instruction);
        push_section(&mut out, "scorer.instruction", &self.scorer_instruction);
        for demo in &self.composer_demos {
            push_demo(&mut out, "composer.demo", demo);
        }
        for demo in &self.scorer_demos {
            push_demo(&mut out, "scorer.demo", demo);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, PromptError> {
        let mut lines = text.lines().peekable();
        match lines.next() {
            Some(line) if line.trim() == HEADER => {}
            other => {
                return Err(PromptError::StateFormat(format!(
                    "missing header, found {other:?}"
                )))
            }
        }
        let mut token_cap = None;
        let mut sections: Vec<(String, String)> = Vec::new();
        let mut current: Option<(String, String)> = None;
        for line in lines {
            if let Some(name) = section_marker(line) {
                if let Some(done) = current.take() {
                    sections.push(done);
                }
                current = Some((name.to_owned(), String::new()));
            } else if let Some((_, body)) = current.as_mut() {
                body.push_str(line);
                body.push('\n');
            } else if let Some(rest) = line.trim().strip_prefix("token_cap:") {
                token_cap = Some(rest.trim().parse::<usize>().map_err(|_| {
                    PromptError::StateFormat(format!("bad token_cap `{}`", rest.trim()))
                })?);
            }
        }
        if let Some(done) = current.take() {
            sections.push(done);
        }

        let mut state = PromptState {
            composer_instruction: String::new(),
            scorer_instruction: String::new(),
            composer_demos: Vec::new(),
            scorer_demos: Vec::new(),
            token_cap: token_cap
                .ok_or_else(|| PromptError::StateFormat("missing token_cap".into()))?,
        };
        for (name, body) in sections {
            match name.as_str() {
                "composer.instruction" => state.composer_instruction = body.trim().to_owned(),
                "scorer.instruction" => state.scorer_instruction = body.trim().to_owned(),
                "composer.demo" => state.composer_demos.push(parse_demo(&body)?),
                "scorer.demo" => state.scorer_demos.push(parse_demo(&body)?),
                other => {
                    return Err(PromptError::StateFormat(format!(
                        "unknown section `{other}`"
                    )))
                }
            }
        }
        if state.composer_instruction.is_empty() || state.scorer_instruction.is_empty() {
            return Err(PromptError::StateFormat(
                "both stage instructions are required".into(),
            ));
        }
        Ok(state)
    }
}

fn push_section(out: &mut String, name: &str, body: &str) {
    out.push_str(&format!("\n=== {name} ===\n"));
    out.push_str(body.trim_end());
    out.push('\n');
}

fn push_demo(out: &mut String, name: &str, demo: &Demo) {
    out.push_str(&format!("\n=== {name} ===\n"));
    for (field, value) in &demo.inputs {
        out.push_str(&format!("--- input {field} ---\n"));
        out.push_str(value.trim_end());
        out.push('\n');
    }
    for (field, value) in &demo.outputs {
        out.push_str(&format!("--- output {field} ---\n"));
        out.push_str(value.trim_end());
        out.push('\n');
    }
}

fn parse_demo(body: &str) -> Result<Demo, PromptError> {
    let mut demo = Demo::new();
    let mut current: Option<(bool, String, String)> = None;
    let flush = |cur: &mut Option<(bool, String, String)>,
                     inputs: &mut BTreeMap<String, String>,
                     outputs: &mut BTreeMap<String, String>| {
        if let Some((is_input, field, value)) = cur.take() {
            let value = value.trim_end().to_owned();
            if is_input {
                inputs.insert(field, value);
            } else {
                outputs.insert(field, value);
            }
        }
    };
    for line in body.lines() {
        let marker = line
            .trim()
            .strip_prefix("--- ")
            .and_then(|l| l.strip_suffix(" ---"));
        if let Some(inner) = marker {
            flush(&mut current, &mut demo.inputs, &mut demo.outputs);
            if let Some(field) = inner.strip_prefix("input ") {
                current = Some((true, field.to_owned(), String::new()));
            } else if let Some(field) = inner.strip_prefix("output ") {
                current = Some((false, field.to_owned(), String::new()));
            } else {
                return Err(PromptError::StateFormat(format!(
                    "unknown demo field marker `{inner}`"
                )));
            }
        } else if let Some((_, _, value)) = current.as_mut() {
            value.push_str(line);
            value.push('\n');
        }
    }
    flush(&mut current, &mut demo.inputs, &mut demo.outputs);
    Ok(demo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_for_countries_frame_a_geography_expert() {
        let state = PromptState::default_for("countries", 8192);
        assert!(state.composer_instruction.contains("geography expert"));
        assert!(state.scorer_instruction.contains("geography expert"));
        assert!(state.composer_demos.is_empty());
    }

    #[test]
    fn unknown_domain_falls_back_to_generic() {
        let state = PromptState::default_for("litwd1k", 8192);
        assert!(state.composer_instruction.contains("knowledge graph"));
    }

    #[test]
    fn text_round_trip_preserves_state() {
        let mut state = PromptState::default_for("countries", 4096);
        state.composer_demos.push(
            Demo::new()
                .input("subject", "germany")
                .input("relation", "locatedin")
                .output("candidates", "[europe, western_europe]"),
        );
        state.scorer_demos.push(
            Demo::new()
                .input("subject", "germany")
                .input("relation", "locatedin")
                .input("candidates", "[europe]")
                .output("scores", "```\neurope\t1.0\tasserted in the graph\n```"),
        );
        let text = state.to_text();
        let parsed = PromptState::from_text(&text).unwrap();
        assert_eq!(parsed, state);
    }

    #[test]
    fn missing_header_is_rejected() {
        assert!(matches!(
            PromptState::from_text("not a state file"),
            Err(PromptError::StateFormat(_))
        ));
    }
}
