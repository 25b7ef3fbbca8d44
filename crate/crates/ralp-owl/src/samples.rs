//! Deterministic random generators for property tests and acceptance
//! checks: small family-style ABoxes and class expressions of bounded
//! depth covering all ten concept groups.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ralp_core::kg::{CorpusBuilder, KnowledgeGraph, Split};

use crate::ast::{ClassExpression, Role};

pub const SAMPLE_CLASSES: [&str; 4] = ["person", "male", "female", "parent"];
pub const SAMPLE_ROLES: [&str; 2] = ["hasChild", "knows"];

/// A random ABox over `n_people` individuals: everyone typed `person`
/// and either `male` or `female`, plus random role edges; sources of
/// `hasChild` edges are additionally typed `parent`.
pub fn random_family_graph(rng: &mut ChaCha8Rng, n_people: usize, n_edges: usize) -> KnowledgeGraph {
    let mut b = CorpusBuilder::new();
    let name = |i: usize| format!("p{i}");
    for i in 0..n_people {
        b.add_entity_triple(Split::Train, &name(i), "type", "person");
        let class = if rng.random_bool(0.5) { "male" } else { "female" };
        b.add_entity_triple(Split::Train, &name(i), "type", class);
    }
    for _ in 0..n_edges {
        let from = rng.random_range(0..n_people);
        let to = rng.random_range(0..n_people);
        let role = SAMPLE_ROLES[rng.random_range(0..SAMPLE_ROLES.len())];
        b.add_entity_triple(Split::Train, &name(from), role, &name(to));
        if role == "hasChild" {
            b.add_entity_triple(Split::Train, &name(from), "type", "parent");
        }
    }
    b.finish().graph(Split::Train).unwrap().clone()
}

fn random_role(rng: &mut ChaCha8Rng) -> Role {
    let name = SAMPLE_ROLES[rng.random_range(0..SAMPLE_ROLES.len())];
    if rng.random_bool(0.25) {
        Role::inverse(name)
    } else {
        Role::named(name)
    }
}

/// A random expression of depth at most `depth`, drawing classes, roles
/// and individual names from the sample vocabulary.
pub fn random_expression(rng: &mut ChaCha8Rng, depth: usize, n_people: usize) -> ClassExpression {
    if depth == 0 || rng.random_bool(0.2) {
        return if rng.random_bool(0.75) {
            let class = SAMPLE_CLASSES[rng.random_range(0..SAMPLE_CLASSES.len())];
            ClassExpression::atomic(class)
        } else {
            let count = rng.random_range(1..=3.min(n_people));
            let names: Vec<String> = (0..count)
                .map(|_| format!("p{}", rng.random_range(0..n_people)))
                .collect();
            ClassExpression::one_of(names)
        };
    }
    let next = depth - 1;
    match rng.random_range(0..7) {
        0 => ClassExpression::negation(random_expression(rng, next, n_people)),
        1 => ClassExpression::conjunction(
            random_expression(rng, next, n_people),
            random_expression(rng, next, n_people),
        ),
        2 => ClassExpression::disjunction(
            random_expression(rng, next, n_people),
            random_expression(rng, next, n_people),
        ),
        3 => ClassExpression::exists(random_role(rng), random_expression(rng, next, n_people)),
        4 => ClassExpression::forall(random_role(rng), random_expression(rng, next, n_people)),
        5 => ClassExpression::at_least(
            rng.random_range(0..4),
            random_role(rng),
            random_expression(rng, next, n_people),
        ),
        _ => ClassExpression::at_most(
            rng.random_range(0..4),
            random_role(rng),
            random_expression(rng, next, n_people),
        ),
    }
}
