//! Context retrieval for a numeric query: the subject's other facts
//! first, then relation-level value patterns from other subjects, packed
//! under a token budget.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_core::{EntityId, KnowledgeGraph, Object, RelationId, Triple};
use ralp_lm::TokenEstimator;

/// A `(subject, data-property)` pair to predict a literal for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericQuery {
    pub subject: EntityId,
    pub property: RelationId,
}

/// Retrieved context: subject-specific triples and relation-level
/// `(other subject, value)` pairs, with the estimated token cost.
#[derive(Clone, Debug)]
pub struct ContextBundle {
    pub property: RelationId,
    pub subject_context: Vec<Triple>,
    pub relation_context: Vec<(EntityId, f64)>,
    pub token_cost: usize,
}

/// Fill the bundle: all of the subject's other triples first (as long
/// as they fit), then a seeded uniform sample of the property's values
/// on other subjects until the budget runs out. The query's own triple
/// never appears on either side.
pub fn retrieve_context(
    graph: &KnowledgeGraph,
    query: &NumericQuery,
    budget_tokens: usize,
    estimator: &TokenEstimator,
    seed: u64,
) -> ContextBundle {
    let mut bundle = ContextBundle {
        property: query.property,
        subject_context: Vec::new(),
        relation_context: Vec::new(),
        token_cost: 0,
    };

    for triple in graph.subject_triples(query.subject) {
        if triple.relation == query.property {
            continue;
        }
        let cost = estimator.estimate(&render_triple(graph, triple));
        if bundle.token_cost + cost > budget_tokens {
            return bundle;
        }
        bundle.token_cost += cost;
        bundle.subject_context.push(*triple);
    }

    let mut relation_pool: Vec<(EntityId, f64)> = graph
        .relation_triples(query.property)
        .filter(|t| t.subject != query.subject)
        .filter_map(|t| match t.object {
            Object::Literal(v) => Some((t.subject, v)),
            Object::Entity(_) => None,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    relation_pool.shuffle(&mut rng);
    for (subject, value) in relation_pool {
        let line = render_value_line(graph, subject, query.property, value);
        let cost = estimator.estimate(&line);
        if bundle.token_cost + cost > budget_tokens {
            break;
        }
        bundle.token_cost += cost;
        bundle.relation_context.push((subject, value));
    }
    bundle
}

/// Render the bundle into prompt text, one fact per line.
pub fn render_context(graph: &KnowledgeGraph, bundle: &ContextBundle) -> String {
    let mut lines = Vec::new();
    for t in &bundle.subject_context {
        lines.push(render_triple(graph, t));
    }
    for (subject, value) in &bundle.relation_context {
        lines.push(render_value_line(graph, *subject, bundle.property, *value));
    }
    lines.join("\n")
}

fn render_triple(graph: &KnowledgeGraph, t: &Triple) -> String {
    let vocab = graph.vocab();
    let object = match t.object {
        Object::Entity(e) => vocab.entity_text(e).to_owned(),
        Object::Literal(v) => format_value(v),
    };
    format!(
        "{} {} {}",
        vocab.entity_text(t.subject),
        vocab.relation_text(t.relation),
        object
    )
}

fn render_value_line(
    graph: &KnowledgeGraph,
    subject: EntityId,
    property: RelationId,
    value: f64,
) -> String {
    let vocab = graph.vocab();
    format!(
        "{} {} {}",
        vocab.entity_text(subject),
        vocab.relation_text(property),
        format_value(value)
    )
}

/// Numbers rendered for prompts: no thousands separators, at most six
/// significant digits.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_owned();
    }
    const SIG: i32 = 6;
    let magnitude = v.abs().log10().floor() as i32;
    let scale = 10f64.powi(magnitude - (SIG - 1));
    let rounded = (v / scale).round() * scale;
    let decimals = (SIG - 1 - magnitude).max(0) as usize;
    let text = format!("{rounded:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        text
    }
}
