//! The set-based reasoner checked against an independent per-entity
//! satisfaction evaluator on random graphs, plus algebraic identities.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_core::{EntityId, KnowledgeGraph, Object};
use ralp_owl::samples::{random_expression, random_family_graph};
use ralp_owl::{ClassExpression, Reasoner, Role};

/// Second implementation, written as a per-entity recursive
/// satisfaction check over adjacency scans rather than set algebra.
struct SatChecker<'g> {
    graph: &'g KnowledgeGraph,
}

impl<'g> SatChecker<'g> {
    fn successors(&self, x: EntityId, role: &Role) -> Vec<EntityId> {
        let vocab = self.graph.vocab();
        let Some(rel) = vocab.relation(&role.name) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for t in self.graph.triples() {
            if t.relation != rel {
                continue;
            }
            let Object::Entity(o) = t.object else { continue };
            if role.inverted {
                if o == x {
                    out.push(t.subject);
                }
            } else if t.subject == x {
                out.push(o);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn satisfies(&self, x: EntityId, expr: &ClassExpression) -> bool {
        let vocab = self.graph.vocab();
        match expr {
            ClassExpression::Atomic(name) => {
                let Some(type_rel) = vocab.relation("type") else {
                    return false;
                };
                let Some(class) = vocab.entity(name) else {
                    return false;
                };
                self.graph.contains(x, type_rel, Object::Entity(class))
            }
            ClassExpression::Not(inner) => !self.satisfies(x, inner),
            ClassExpression::And(a, b) => self.satisfies(x, a) && self.satisfies(x, b),
            ClassExpression::Or(a, b) => self.satisfies(x, a) || self.satisfies(x, b),
            ClassExpression::Exists(role, filler) => self
                .successors(x, role)
                .into_iter()
                .any(|y| self.satisfies(y, filler)),
            ClassExpression::Forall(role, filler) => self
                .successors(x, role)
                .into_iter()
                .all(|y| self.satisfies(y, filler)),
            ClassExpression::MinCard(n, role, filler) => {
                let count = self
                    .successors(x, role)
                    .into_iter()
                    .filter(|&y| self.satisfies(y, filler))
                    .count();
                count >= *n as usize
            }
            ClassExpression::MaxCard(n, role, filler) => {
                let count = self
                    .successors(x, role)
                    .into_iter()
                    .filter(|&y| self.satisfies(y, filler))
                    .count();
                count <= *n as usize
            }
            ClassExpression::OneOf(names) => names
                .iter()
                .any(|n| vocab.entity(n) == Some(x)),
        }
    }

    fn retrieve(&self, expr: &ClassExpression) -> BTreeSet<EntityId> {
        self.graph
            .vocab()
            .entities()
            .filter(|&x| self.satisfies(x, expr))
            .collect()
    }
}

#[test]
fn two_hundred_random_cases_agree_with_the_second_evaluator() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut group_seen = std::collections::BTreeSet::new();
    for case in 0..200 {
        let graph = random_family_graph(&mut rng, 6 + (case % 10), 40);
        let expr = random_expression(&mut rng, 3, 6);
        group_seen.insert(ralp_owl::classify_concept(&expr));

        let reasoner = Reasoner::new(&graph);
        let (got, _) = reasoner.retrieve(&expr);
        let want = SatChecker { graph: &graph }.retrieve(&expr);
        assert_eq!(got, want, "case {case}: {expr:?}");
    }
    // the random generator must exercise most concept groups
    assert!(group_seen.len() >= 7, "only saw groups {group_seen:?}");
}

#[test]
fn all_ten_concept_groups_agree_on_handpicked_expressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graph = random_family_graph(&mut rng, 10, 50);
    let exprs = vec![
        ClassExpression::atomic("female"),
        ClassExpression::negation(ClassExpression::atomic("male")),
        ClassExpression::conjunction(
            ClassExpression::atomic("person"),
            ClassExpression::atomic("parent"),
        ),
        ClassExpression::disjunction(
            ClassExpression::atomic("male"),
            ClassExpression::atomic("female"),
        ),
        ClassExpression::exists(Role::named("hasChild"), ClassExpression::atomic("female")),
        ClassExpression::forall(Role::named("hasChild"), ClassExpression::atomic("male")),
        ClassExpression::at_least(2, Role::named("hasChild"), ClassExpression::atomic("person")),
        ClassExpression::at_most(1, Role::named("knows"), ClassExpression::atomic("person")),
        ClassExpression::one_of(["p0", "p1", "p99"]),
        ClassExpression::exists(Role::inverse("hasChild"), ClassExpression::atomic("parent")),
    ];
    let groups: BTreeSet<_> = exprs.iter().map(ralp_owl::classify_concept).collect();
    assert_eq!(groups.len(), 10);

    let reasoner = Reasoner::new(&graph);
    let checker = SatChecker { graph: &graph };
    for expr in &exprs {
        let (got, _) = reasoner.retrieve(expr);
        assert_eq!(got, checker.retrieve(expr), "{expr:?}");
    }
}

#[test]
fn de_morgan_holds_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    for _ in 0..60 {
        let graph = random_family_graph(&mut rng, 8, 30);
        let a = random_expression(&mut rng, 2, 8);
        let b = random_expression(&mut rng, 2, 8);
        let reasoner = Reasoner::new(&graph);

        let lhs = ClassExpression::negation(ClassExpression::conjunction(a.clone(), b.clone()));
        let rhs = ClassExpression::disjunction(
            ClassExpression::negation(a.clone()),
            ClassExpression::negation(b.clone()),
        );
        assert_eq!(reasoner.retrieve(&lhs).0, reasoner.retrieve(&rhs).0);
    }
}

#[test]
fn exists_equals_min_card_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(321);
    for _ in 0..60 {
        let graph = random_family_graph(&mut rng, 8, 30);
        let filler = random_expression(&mut rng, 2, 8);
        for role in [Role::named("hasChild"), Role::inverse("knows")] {
            let reasoner = Reasoner::new(&graph);
            let exists = ClassExpression::exists(role.clone(), filler.clone());
            let min1 = ClassExpression::at_least(1, role.clone(), filler.clone());
            assert_eq!(reasoner.retrieve(&exists).0, reasoner.retrieve(&min1).0);
        }
    }
}

#[test]
fn nominal_extension_is_exactly_the_known_subset() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let graph = random_family_graph(&mut rng, 5, 10);
    let reasoner = Reasoner::new(&graph);
    let (set, _) = reasoner.retrieve(&ClassExpression::one_of(["p0", "p3", "p17"]));
    let expected: BTreeSet<EntityId> = ["p0", "p3"]
        .iter()
        .filter_map(|n| graph.vocab().entity(n))
        .collect();
    assert_eq!(set, expected);
}
