//! LM-backed instance retrieval: few-shot example generation and the
//! prediction call, with entity-name resolution of the output.

use std::collections::BTreeSet;

use ralp_core::{EntityId, KnowledgeGraph, Object, Scalar};
use ralp_lm::{LmGateway, LmRequest};
use ralp_prompt::{initialize_prompt, Demo, FieldSpec, PromptState, Signature};

use crate::ast::ClassExpression;
use crate::render::{render_with_prefix, NamespaceMode, Syntax, DEFAULT_PREFIX};
use crate::OwlError;

/// One task instance: concept, its syntax note, and the ground truth.
#[derive(Clone, Debug)]
pub struct RetrievalTask {
    pub concept: ClassExpression,
    pub syntax_note: String,
    pub truth: BTreeSet<EntityId>,
}

/// A worked example shown to the LM. The answer set always equals the
/// oracle truth it was built from, regardless of what the LM wrote.
#[derive(Clone, Debug)]
pub struct FewShotExample {
    pub concept_text: String,
    pub syntax_note: String,
    pub cot: String,
    pub answer: Vec<String>,
}

/// Template note describing the constructors used in an expression;
/// keeps prompts grounded without an extra LM round trip.
pub fn syntax_note(e: &ClassExpression, syntax: Syntax) -> String {
    let mut parts: Vec<&str> = Vec::new();
    collect_constructs(e, &mut parts);
    parts.dedup();
    let dialect = match syntax {
        Syntax::Manchester => "Manchester syntax",
        Syntax::Dl => "description logic syntax",
    };
    format!(
        "The expression is written in {dialect}. It uses: {}.",
        parts.join("; ")
    )
}

fn collect_constructs<'a>(e: &'a ClassExpression, parts: &mut Vec<&'a str>) {
    match e {
        ClassExpression::Atomic(_) => parts.push("an atomic class (all individuals asserted to have that type)"),
        ClassExpression::Not(inner) => {
            parts.push("negation (everything in the domain not satisfying the inner expression)");
            collect_constructs(inner, parts);
        }
        ClassExpression::And(a, b) => {
            parts.push("conjunction (individuals satisfying both sides)");
            collect_constructs(a, parts);
            collect_constructs(b, parts);
        }
        ClassExpression::Or(a, b) => {
            parts.push("disjunction (individuals satisfying either side)");
            collect_constructs(a, parts);
            collect_constructs(b, parts);
        }
        ClassExpression::Exists(role, f) => {
            parts.push("an existential restriction (some successor through the role satisfies the filler)");
            if role.inverted {
                parts.push("an inverse role (edges are followed backward)");
            }
            collect_constructs(f, parts);
        }
        ClassExpression::Forall(role, f) => {
            parts.push("a universal restriction (every successor satisfies the filler; individuals with no successor qualify vacuously)");
            if role.inverted {
                parts.push("an inverse role (edges are followed backward)");
            }
            collect_constructs(f, parts);
        }
        ClassExpression::MinCard(_, role, f) => {
            parts.push("a minimum cardinality restriction (at least n distinct qualifying successors)");
            if role.inverted {
                parts.push("an inverse role (edges are followed backward)");
            }
            collect_constructs(f, parts);
        }
        ClassExpression::MaxCard(_, role, f) => {
            parts.push("a maximum cardinality restriction (at most n distinct qualifying successors)");
            if role.inverted {
                parts.push("an inverse role (edges are followed backward)");
            }
            collect_constructs(f, parts);
        }
        ClassExpression::OneOf(_) => parts.push("a nominal (exactly the listed individuals)"),
    }
}

/// All triples rendered one per line, with or without a namespace prefix.
pub fn render_graph(graph: &KnowledgeGraph, namespace: NamespaceMode) -> String {
    let prefix = match namespace {
        NamespaceMode::With => DEFAULT_PREFIX,
        NamespaceMode::Without => "",
    };
    let vocab = graph.vocab();
    let mut lines: Vec<String> = graph
        .triples()
        .iter()
        .filter_map(|t| match t.object {
            Object::Entity(o) => Some(format!(
                "{prefix}{} {prefix}{} {prefix}{}",
                vocab.entity_text(t.subject),
                vocab.relation_text(t.relation),
                vocab.entity_text(o)
            )),
            Object::Literal(_) => None,
        })
        .collect();
    lines.sort_unstable();
    lines.join("\n")
}

fn retrieval_signature(instruction: &str) -> Result<Signature, OwlError> {
    Ok(Signature::new(
        "instance-retrieval",
        vec![
            FieldSpec::new("facts", "the knowledge graph, one triple per line"),
            FieldSpec::new("syntax_note", "what the expression's constructors mean"),
            FieldSpec::new("concept", "the class expression to retrieve instances of"),
        ],
        vec![
            FieldSpec::new("reasoning", "step-by-step justification"),
            FieldSpec::new("instances", "one line: instances: [name1, name2, ...]"),
        ],
        instruction,
    )?)
}

/// Generate one CoT example for a concept whose truth set is known.
/// LM failures fall back to a deterministic template.
pub fn generate_fewshot(
    gateway: &LmGateway,
    state: &PromptState,
    graph: &KnowledgeGraph,
    concept: &ClassExpression,
    truth: &BTreeSet<EntityId>,
    syntax: Syntax,
    namespace: NamespaceMode,
) -> (FewShotExample, Vec<String>) {
    let vocab = graph.vocab();
    let concept_text = render_with_prefix(
        concept,
        syntax,
        namespace,
        DEFAULT_PREFIX,
    );
    let note = syntax_note(concept, syntax);
    let answer: Vec<String> = truth
        .iter()
        .map(|&e| vocab.entity_text(e).to_owned())
        .collect();
    let mut warnings = Vec::new();

    let instruction = ralp_prompt::default_instruction("owl.fewshot")
        .expect("bundled owl.fewshot instruction");
    let prompt = format!(
        "{instruction}\n\nFacts:\n{}\n\nSyntax note: {note}\nConcept: {concept_text}\nCorrect answer set: [{}]\n\nExplanation:",
        render_graph(graph, namespace),
        answer.join(", ")
    );
    let mut request = LmRequest::from_prompt(prompt);
    request.max_tokens = state.token_cap.min(1024) as u32;

    let cot = match gateway.complete(&request) {
        Ok(resp) if !resp.text.trim().is_empty() => resp.text.trim().to_owned(),
        Ok(_) | Err(_) => {
            warnings.push(format!(
                "few-shot generation fell back to the template for `{concept_text}`"
            ));
            format!(
                "Check each individual in the facts against `{concept_text}`. \
                 Exactly these satisfy it: [{}].",
                answer.join(", ")
            )
        }
    };
    (
        FewShotExample {
            concept_text,
            syntax_note: note,
            cot,
            answer,
        },
        warnings,
    )
}

/// One LM call predicting the instance set of a concept.
pub fn llm_retrieve(
    gateway: &LmGateway,
    state: &PromptState,
    graph: &KnowledgeGraph,
    concept: &ClassExpression,
    examples: &[FewShotExample],
    syntax: Syntax,
    namespace: NamespaceMode,
) -> Result<(BTreeSet<EntityId>, Vec<String>), OwlError> {
    let instruction = ralp_prompt::default_instruction("owl.retrieve")
        .expect("bundled owl.retrieve instruction");
    let sig = retrieval_signature(&instruction)?;
    let demos: Vec<Demo> = examples
        .iter()
        .map(|ex| {
            Demo::new()
                .input("syntax_note", &ex.syntax_note)
                .input("concept", &ex.concept_text)
                .output("reasoning", &ex.cot)
                .output("instances", format!("instances: [{}]", ex.answer.join(", ")))
        })
        .collect();
    let query = vec![
        ("facts".to_owned(), render_graph(graph, namespace)),
        (
            "syntax_note".to_owned(),
            syntax_note(concept, syntax),
        ),
        (
            "concept".to_owned(),
            render_with_prefix(concept, syntax, namespace, DEFAULT_PREFIX),
        ),
    ];
    let prompt = initialize_prompt(&sig, &demos, &query, state.token_cap, gateway.estimator())?;
    let response = gateway.complete(&LmRequest::from_prompt(prompt))?;
    parse_instances(graph, &response.text)
}

/// Parse an `instances: [...]` answer and resolve names against the
/// graph, case-insensitively and namespace-stripped. Unknown names are
/// dropped with warnings; duplicates collapse.
pub fn parse_instances(
    graph: &KnowledgeGraph,
    text: &str,
) -> Result<(BTreeSet<EntityId>, Vec<String>), OwlError> {
    let lower = text.to_lowercase();
    let names: Vec<String> = if let Some(pos) = lower.rfind("instances:") {
        let after = &text[pos + "instances:".len()..];
        let inner = match (after.find('['), after.find(']')) {
            (Some(open), Some(close)) if close > open => &after[open + 1..close],
            _ => after.lines().next().unwrap_or(""),
        };
        inner
            .split(',')
            .map(|s| s.trim().trim_matches(|c| c == '"' || c == '\'').to_owned())
            .filter(|s| !s.is_empty())
            .collect()
    } else {
        return Err(OwlError::OutputParse {
            raw: text.to_owned(),
        });
    };

    let vocab = graph.vocab();
    let mut lowercase = std::collections::HashMap::new();
    for e in vocab.entities() {
        lowercase
            .entry(vocab.entity_id_str(e).to_lowercase())
            .or_insert(e);
        if let Some(label) = vocab.entity_label(e) {
            lowercase.entry(label.to_lowercase()).or_insert(e);
        }
    }
    let mut set = BTreeSet::new();
    let mut warnings = Vec::new();
    for name in names {
        match lowercase.get(&crate::strip_prefix(&name).to_lowercase()) {
            Some(&e) => {
                set.insert(e);
            }
            None => warnings.push(format!("predicted unknown individual `{name}`")),
        }
    }
    Ok((set, warnings))
}

/// Jaccard similarity `|a ∩ b| / |a ∪ b|`; two empty sets count as a
/// perfect match (both parties agree nothing qualifies).
pub fn jaccard<F: Scalar>(a: &BTreeSet<EntityId>, b: &BTreeSet<EntityId>) -> F {
    if a.is_empty() && b.is_empty() {
        return F::one();
    }
    let intersection = a.intersection(b).count();
    let union = a.union(b).count();
    F::of(intersection as f64) / F::of(union as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ralp_core::kg::{CorpusBuilder, Split};

    fn toy() -> KnowledgeGraph {
        let mut b = CorpusBuilder::new();
        b.add_entity_triple(Split::Train, "anna", "type", "female");
        b.add_entity_triple(Split::Train, "markus", "type", "male");
        b.finish().graph(Split::Train).unwrap().clone()
    }

    #[test]
    fn jaccard_identities() {
        let g = toy();
        let anna = g.vocab().entity("anna").unwrap();
        let markus = g.vocab().entity("markus").unwrap();
        let a: BTreeSet<_> = [anna, markus].into_iter().collect();
        let b: BTreeSet<_> = [anna].into_iter().collect();
        assert_eq!(jaccard::<f64>(&a, &a), 1.0);
        assert_eq!(jaccard::<f64>(&b, &BTreeSet::new()), 0.0);
        assert_eq!(jaccard::<f64>(&BTreeSet::new(), &BTreeSet::new()), 1.0);
        assert!((jaccard::<f64>(&a, &b) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jaccard_one_third_case() {
        let g = {
            let mut b = CorpusBuilder::new();
            b.add_entity_triple(Split::Train, "a", "type", "t");
            b.add_entity_triple(Split::Train, "b", "type", "t");
            b.add_entity_triple(Split::Train, "c", "type", "t");
            b.finish().graph(Split::Train).unwrap().clone()
        };
        let id = |n: &str| g.vocab().entity(n).unwrap();
        let left: BTreeSet<_> = [id("a"), id("b")].into_iter().collect();
        let right: BTreeSet<_> = [id("b"), id("c")].into_iter().collect();
        assert!((jaccard::<f64>(&left, &right) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn instance_parse_dedups_and_drops_unknowns() {
        let g = toy();
        let (set, warnings) =
            parse_instances(&g, "Reasoning...\ninstances: [anna, anna, ns:markus, zeus]")
                .unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("zeus"));
    }

    #[test]
    fn missing_answer_line_is_a_parse_error() {
        let g = toy();
        assert!(matches!(
            parse_instances(&g, "no structured answer"),
            Err(OwlError::OutputParse { .. })
        ));
    }
}
