//! Closed-world, finite-domain instance retrieval over one ABox.
//!
//! The entity domain is the graph's full entity set; atomic class
//! membership comes from a designated type relation; facts absent from
//! the graph are false. This mirrors how the ground-truth sets are
//! defined and deliberately avoids open-world entailment machinery.

use std::collections::{BTreeSet, HashMap};

use ralp_core::{EntityId, KnowledgeGraph, Object, RelationId};

use crate::ast::{ClassExpression, Role};

/// Optional role hierarchy: an edge asserted for a sub-role also counts
/// for every super-role, transitively.
#[derive(Clone, Debug, Default)]
pub struct RoleHierarchy {
    /// super-role name -> all names whose edges count for it
    subs: HashMap<String, BTreeSet<String>>,
}

impl RoleHierarchy {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from `(sub, super)` pairs, closing transitively.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        let mut direct: HashMap<String, BTreeSet<String>> = HashMap::new();
        for (sub, sup) in pairs {
            direct
                .entry(sup.to_owned())
                .or_default()
                .insert(sub.to_owned());
        }
        // transitive closure by fixpoint; hierarchies are tiny
        let mut subs = direct.clone();
        loop {
            let mut grew = false;
            let snapshot = subs.clone();
            for (_sup, members) in subs.iter_mut() {
                let additions: BTreeSet<String> = members
                    .iter()
                    .flat_map(|m| snapshot.get(m).into_iter().flatten().cloned())
                    .collect();
                for a in additions {
                    grew |= members.insert(a);
                }
            }
            if !grew {
                break;
            }
        }
        Self { subs }
    }

    fn names_for<'a>(&'a self, role: &'a str) -> Vec<&'a str> {
        let mut names = vec![role];
        if let Some(subs) = self.subs.get(role) {
            names.extend(subs.iter().map(String::as_str));
        }
        names
    }
}

pub struct Reasoner<'g> {
    graph: &'g KnowledgeGraph,
    type_relation: Option<RelationId>,
    hierarchy: RoleHierarchy,
    lowercase_entities: HashMap<String, EntityId>,
}

/// Default name of the relation encoding atomic class membership.
pub const TYPE_RELATION: &str = "type";

impl<'g> Reasoner<'g> {
    pub fn new(graph: &'g KnowledgeGraph) -> Self {
        Self::with_type_relation(graph, TYPE_RELATION)
    }

    pub fn with_type_relation(graph: &'g KnowledgeGraph, type_relation: &str) -> Self {
        let vocab = graph.vocab();
        let mut lowercase_entities = HashMap::new();
        for e in vocab.entities() {
            lowercase_entities
                .entry(vocab.entity_id_str(e).to_lowercase())
                .or_insert(e);
            if let Some(label) = vocab.entity_label(e) {
                lowercase_entities.entry(label.to_lowercase()).or_insert(e);
            }
        }
        Self {
            graph,
            type_relation: vocab.relation(type_relation),
            hierarchy: RoleHierarchy::empty(),
            lowercase_entities,
        }
    }

    pub fn with_role_hierarchy(mut self, hierarchy: RoleHierarchy) -> Self {
        self.hierarchy = hierarchy;
        self
    }

    fn domain(&self) -> BTreeSet<EntityId> {
        self.graph.vocab().entities().collect()
    }

    fn resolve_entity(&self, name: &str) -> Option<EntityId> {
        self.lowercase_entities
            .get(&crate::strip_prefix(name).to_lowercase())
            .copied()
    }

    /// Directed edges for a role, honoring inversion and the hierarchy.
    fn edges(&self, role: &Role, warnings: &mut Vec<String>) -> Vec<(EntityId, EntityId)> {
        let vocab = self.graph.vocab();
        let mut edges = Vec::new();
        let mut any_known = false;
        for name in self.hierarchy.names_for(&role.name) {
            let Some(rel) = vocab.relation(name) else {
                continue;
            };
            any_known = true;
            for t in self.graph.relation_triples(rel) {
                if let Object::Entity(o) = t.object {
                    if role.inverted {
                        edges.push((o, t.subject));
                    } else {
                        edges.push((t.subject, o));
                    }
                }
            }
        }
        if !any_known {
            warnings.push(format!("unknown role `{}`", role.name));
        }
        edges
    }

    fn successors(
        &self,
        role: &Role,
        warnings: &mut Vec<String>,
    ) -> HashMap<EntityId, BTreeSet<EntityId>> {
        let mut map: HashMap<EntityId, BTreeSet<EntityId>> = HashMap::new();
        for (x, y) in self.edges(role, warnings) {
            map.entry(x).or_default().insert(y);
        }
        map
    }

    /// All entities satisfying the expression.
    pub fn retrieve(&self, expr: &ClassExpression) -> (BTreeSet<EntityId>, Vec<String>) {
        let mut warnings = Vec::new();
        let result = self.eval(expr, &mut warnings);
        (result, warnings)
    }

    fn eval(&self, expr: &ClassExpression, warnings: &mut Vec<String>) -> BTreeSet<EntityId> {
        match expr {
            ClassExpression::Atomic(name) => {
                let Some(type_rel) = self.type_relation else {
                    warnings.push("graph has no type relation".to_owned());
                    return BTreeSet::new();
                };
                let Some(class_entity) = self.resolve_entity(name) else {
                    warnings.push(format!("unknown atomic class `{name}`"));
                    return BTreeSet::new();
                };
                self.graph
                    .relation_triples(type_rel)
                    .filter(|t| t.object == Object::Entity(class_entity))
                    .map(|t| t.subject)
                    .collect()
            }
            ClassExpression::Not(inner) => {
                let inner = self.eval(inner, warnings);
                self.domain().difference(&inner).copied().collect()
            }
            ClassExpression::And(a, b) => {
                let a = self.eval(a, warnings);
                let b = self.eval(b, warnings);
                a.intersection(&b).copied().collect()
            }
            ClassExpression::Or(a, b) => {
                let a = self.eval(a, warnings);
                let b = self.eval(b, warnings);
                a.union(&b).copied().collect()
            }
            ClassExpression::Exists(role, filler) => {
                let targets = self.eval(filler, warnings);
                self.edges(role, warnings)
                    .into_iter()
                    .filter(|(_, y)| targets.contains(y))
                    .map(|(x, _)| x)
                    .collect()
            }
            ClassExpression::Forall(role, filler) => {
                let targets = self.eval(filler, warnings);
                let successors = self.successors(role, warnings);
                // entities without successors satisfy the restriction vacuously
                self.domain()
                    .into_iter()
                    .filter(|x| match successors.get(x) {
                        Some(ys) => ys.is_subset(&targets),
                        None => true,
                    })
                    .collect()
            }
            ClassExpression::MinCard(n, role, filler) => {
                let targets = self.eval(filler, warnings);
                let successors = self.successors(role, warnings);
                self.domain()
                    .into_iter()
                    .filter(|x| {
                        let count = successors
                            .get(x)
                            .map(|ys| ys.intersection(&targets).count())
                            .unwrap_or(0);
                        count >= *n as usize
                    })
                    .collect()
            }
            ClassExpression::MaxCard(n, role, filler) => {
                let targets = self.eval(filler, warnings);
                let successors = self.successors(role, warnings);
                self.domain()
                    .into_iter()
                    .filter(|x| {
                        let count = successors
                            .get(x)
                            .map(|ys| ys.intersection(&targets).count())
                            .unwrap_or(0);
                        count <= *n as usize
                    })
                    .collect()
            }
            ClassExpression::OneOf(names) => names
                .iter()
                .filter_map(|n| {
                    let resolved = self.resolve_entity(n);
                    if resolved.is_none() {
                        warnings.push(format!("unknown individual `{n}`"));
                    }
                    resolved
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::ClassExpression as Ce;
    use ralp_core::kg::{CorpusBuilder, Split};

    fn family() -> KnowledgeGraph {
        let mut b = CorpusBuilder::new();
        for (person, class) in [
            ("anna", "female"),
            ("ida", "female"),
            ("markus", "male"),
            ("stefan", "male"),
        ] {
            b.add_entity_triple(Split::Train, person, "type", class);
        }
        b.add_entity_triple(Split::Train, "markus", "hasChild", "anna");
        b.add_entity_triple(Split::Train, "markus", "hasChild", "stefan");
        b.add_entity_triple(Split::Train, "ida", "hasChild", "anna");
        b.finish().graph(Split::Train).unwrap().clone()
    }

    fn names(g: &KnowledgeGraph, set: &BTreeSet<EntityId>) -> Vec<String> {
        set.iter()
            .map(|&e| g.vocab().entity_id_str(e).to_owned())
            .collect()
    }

    #[test]
    fn atomic_extension_via_type_relation() {
        let g = family();
        let reasoner = Reasoner::new(&g);
        let (set, warnings) = reasoner.retrieve(&Ce::atomic("female"));
        assert_eq!(names(&g, &set), vec!["anna", "ida"]);
        assert!(warnings.is_empty());
    }

    #[test]
    fn complement_of_everything_is_empty() {
        let mut b = CorpusBuilder::new();
        b.add_entity_triple(Split::Train, "a", "type", "thing");
        b.add_entity_triple(Split::Train, "b", "type", "thing");
        // "thing" itself is an entity of the domain but has no type edge,
        // so complete coverage needs it typed too
        b.add_entity_triple(Split::Train, "thing", "type", "thing");
        let g = b.finish().graph(Split::Train).unwrap().clone();
        let reasoner = Reasoner::new(&g);
        let (set, _) = reasoner.retrieve(&Ce::negation(Ce::atomic("thing")));
        assert!(set.is_empty());
    }

    #[test]
    fn forall_includes_successor_free_entities() {
        let g = family();
        let reasoner = Reasoner::new(&g);
        let (set, _) = reasoner.retrieve(&Ce::forall(
            Role::named("hasChild"),
            Ce::atomic("female"),
        ));
        // ida's children are all female; anna/stefan/female/male have no
        // children at all (vacuous); markus has a male child
        let got = names(&g, &set);
        assert!(got.contains(&"ida".to_owned()));
        assert!(got.contains(&"anna".to_owned()));
        assert!(!got.contains(&"markus".to_owned()));
    }

    #[test]
    fn unknown_atomic_warns_and_is_empty() {
        let g = family();
        let reasoner = Reasoner::new(&g);
        let (set, warnings) = reasoner.retrieve(&Ce::atomic("wizard"));
        assert!(set.is_empty());
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn inverse_roles_read_edges_backward() {
        let g = family();
        let reasoner = Reasoner::new(&g);
        // children of a male: x with an incoming hasChild edge from a male
        let (set, _) = reasoner.retrieve(&Ce::exists(
            Role::inverse("hasChild"),
            Ce::atomic("male"),
        ));
        assert_eq!(names(&g, &set), vec!["anna", "stefan"]);
    }

    #[test]
    fn role_hierarchy_counts_sub_role_edges() {
        let mut b = CorpusBuilder::new();
        b.add_entity_triple(Split::Train, "anna", "type", "person");
        b.add_entity_triple(Split::Train, "bert", "type", "person");
        b.add_entity_triple(Split::Train, "anna", "hasDaughter", "ida");
        b.add_entity_triple(Split::Train, "ida", "type", "person");
        let g = b.finish().graph(Split::Train).unwrap().clone();
        let hierarchy = RoleHierarchy::from_pairs([("hasDaughter", "hasChild")]);
        let reasoner = Reasoner::new(&g).with_role_hierarchy(hierarchy);
        let (set, _) = reasoner.retrieve(&Ce::exists(
            Role::named("hasChild"),
            Ce::atomic("person"),
        ));
        assert_eq!(names(&g, &set), vec!["anna"]);
    }

    #[test]
    fn nominal_is_the_listed_set_intersected_with_the_domain() {
        let g = family();
        let reasoner = Reasoner::new(&g);
        let (set, warnings) =
            reasoner.retrieve(&Ce::one_of(["anna", "stefan", "nobody_here"]));
        assert_eq!(names(&g, &set), vec!["anna", "stefan"]);
        assert_eq!(warnings.len(), 1);
    }
}
