//! Instance retrieval over class expressions: parsers for Manchester
//! and DL surface syntax, a closed-world reasoner computing ground
//! truth, LM-backed retrieval with few-shot examples, and Jaccard
//! scoring grouped by concept type.

mod ast;
pub mod dl;
pub mod manchester;
mod reasoner;
mod render;
mod retrieve;
pub mod samples;

pub use ast::{classify_concept, ClassExpression, ConceptGroup, Role};
pub use reasoner::{Reasoner, RoleHierarchy, TYPE_RELATION};
pub use render::{
    parse_class_expression, render, render_with_prefix, NamespaceMode, Syntax, DEFAULT_PREFIX,
};
pub use retrieve::{
    generate_fewshot, jaccard, llm_retrieve, parse_instances, render_graph, syntax_note,
    FewShotExample, RetrievalTask,
};

use thiserror::Error;

/// Parse failure with position and the token classes that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl std::fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "at position {}: expected {}, found {}",
            self.position,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Error)]
pub enum OwlError {
    #[error("syntax error {0}")]
    Syntax(#[from] SyntaxError),

    #[error("could not parse an instance list from LM output: {raw:?}")]
    OutputParse { raw: String },

    #[error(transparent)]
    Prompt(#[from] ralp_prompt::PromptError),

    #[error(transparent)]
    Gateway(#[from] ralp_lm::LmError),
}

/// Strip a `prefix:` namespace from a name, keeping the local part.
pub(crate) fn strip_prefix(name: &str) -> String {
    match name.rfind(':') {
        Some(pos) => name[pos + 1..].to_owned(),
        None => name.to_owned(),
    }
}

/// Parse one line of a concept list file: `<syntax><TAB><expression>`.
pub fn parse_concept_line(line: &str) -> Result<(Syntax, ClassExpression), OwlError> {
    let (tag, text) = line.split_once('\t').ok_or_else(|| OwlError::OutputParse {
        raw: format!("concept line without a tab separator: {line:?}"),
    })?;
    let syntax: Syntax = tag.trim().parse().map_err(|e: String| OwlError::OutputParse { raw: e })?;
    let expr = parse_class_expression(text.trim(), syntax)?;
    Ok((syntax, expr))
}
