//! Indexed triple store over entities, relations and numeric literals.
//!
//! Graphs are immutable once built and cheap to share: the interner
//! ([`Vocabulary`]) sits behind an `Arc` so train/valid/test splits agree
//! on ids, which filtered ranking and embedding training both rely on.

mod load;

pub use load::{load_split, LoadReport, TripleFormat};

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::error::KgError;

/// Interned entity identifier, unique within a [`Vocabulary`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EntityId(pub u32);

/// Interned relation identifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RelationId(pub u32);

/// Whether a relation links entities or carries numeric literals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationKind {
    Object,
    Data,
}

/// Triple object: an entity, or a numeric literal for data-properties.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Object {
    Entity(EntityId),
    Literal(f64),
}

impl Object {
    pub fn as_entity(&self) -> Option<EntityId> {
        match self {
            Object::Entity(e) => Some(*e),
            Object::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<f64> {
        match self {
            Object::Entity(_) => None,
            Object::Literal(v) => Some(*v),
        }
    }

    fn key(&self) -> ObjectKey {
        match self {
            Object::Entity(e) => ObjectKey::Entity(e.0),
            Object::Literal(v) => ObjectKey::Literal(v.to_bits()),
        }
    }
}

/// Hashable form of [`Object`]; literals keyed by their bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum ObjectKey {
    Entity(u32),
    Literal(u64),
}

/// One assertion `(subject, relation, object)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Triple {
    pub subject: EntityId,
    pub relation: RelationId,
    pub object: Object,
}

/// Dataset split a graph belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub enum Split {
    #[default]
    Train,
    Valid,
    Test,
}

impl Split {
    pub fn name(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Valid => "valid",
            Split::Test => "test",
        }
    }
}

/// Interner mapping opaque id strings (e.g. Wikidata Q/P ids) to dense
/// integer ids, with optional human-readable labels on the side.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    entity_ids: Vec<String>,
    entity_labels: Vec<Option<String>>,
    entity_lookup: HashMap<String, EntityId>,
    relation_ids: Vec<String>,
    relation_labels: Vec<Option<String>>,
    relation_kinds: Vec<RelationKind>,
    relation_lookup: HashMap<String, RelationId>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern_entity(&mut self, id: &str) -> EntityId {
        if let Some(&e) = self.entity_lookup.get(id) {
            return e;
        }
        let e = EntityId(self.entity_ids.len() as u32);
        self.entity_ids.push(id.to_owned());
        self.entity_labels.push(None);
        self.entity_lookup.insert(id.to_owned(), e);
        e
    }

    /// Intern a relation with the kind implied by the triple it appears
    /// in. A relation may not switch kinds.
    pub fn intern_relation(&mut self, id: &str, kind: RelationKind) -> Result<RelationId, KgError> {
        if let Some(&r) = self.relation_lookup.get(id) {
            if self.relation_kinds[r.0 as usize] != kind {
                return Err(KgError::RelationKindConflict {
                    relation: id.to_owned(),
                });
            }
            return Ok(r);
        }
        let r = RelationId(self.relation_ids.len() as u32);
        self.relation_ids.push(id.to_owned());
        self.relation_labels.push(None);
        self.relation_kinds.push(kind);
        self.relation_lookup.insert(id.to_owned(), r);
        Ok(r)
    }

    pub fn entity(&self, id: &str) -> Option<EntityId> {
        self.entity_lookup.get(id).copied()
    }

    pub fn relation(&self, id: &str) -> Option<RelationId> {
        self.relation_lookup.get(id).copied()
    }

    pub fn entity_id_str(&self, e: EntityId) -> &str {
        &self.entity_ids[e.0 as usize]
    }

    pub fn relation_id_str(&self, r: RelationId) -> &str {
        &self.relation_ids[r.0 as usize]
    }

    pub fn entity_label(&self, e: EntityId) -> Option<&str> {
        self.entity_labels[e.0 as usize].as_deref()
    }

    pub fn relation_label(&self, r: RelationId) -> Option<&str> {
        self.relation_labels[r.0 as usize].as_deref()
    }

    /// Text used in prompts: the label when present, the raw id otherwise.
    pub fn entity_text(&self, e: EntityId) -> &str {
        self.entity_label(e).unwrap_or_else(|| self.entity_id_str(e))
    }

    pub fn relation_text(&self, r: RelationId) -> &str {
        self.relation_label(r)
            .unwrap_or_else(|| self.relation_id_str(r))
    }

    pub fn relation_kind(&self, r: RelationId) -> RelationKind {
        self.relation_kinds[r.0 as usize]
    }

    pub fn set_entity_label(&mut self, e: EntityId, label: &str) -> Result<(), KgError> {
        if label.is_empty() {
            return Err(KgError::EmptyLabel {
                id: self.entity_id_str(e).to_owned(),
            });
        }
        self.entity_labels[e.0 as usize] = Some(label.to_owned());
        Ok(())
    }

    pub fn set_relation_label(&mut self, r: RelationId, label: &str) -> Result<(), KgError> {
        if label.is_empty() {
            return Err(KgError::EmptyLabel {
                id: self.relation_id_str(r).to_owned(),
            });
        }
        self.relation_labels[r.0 as usize] = Some(label.to_owned());
        Ok(())
    }

    pub fn n_entities(&self) -> usize {
        self.entity_ids.len()
    }

    pub fn n_relations(&self) -> usize {
        self.relation_ids.len()
    }

    pub fn entities(&self) -> impl Iterator<Item = EntityId> + '_ {
        (0..self.entity_ids.len() as u32).map(EntityId)
    }

    pub fn relations(&self) -> impl Iterator<Item = RelationId> + '_ {
        (0..self.relation_ids.len() as u32).map(RelationId)
    }
}

/// One `(subject, relation)` group with the full set of observed objects.
#[derive(Clone, Debug, PartialEq)]
pub struct KvsAllGroup {
    pub subject: EntityId,
    pub relation: RelationId,
    pub objects: Vec<Object>,
}

/// Immutable, indexed set of triples for one split.
#[derive(Clone, Debug)]
pub struct KnowledgeGraph {
    vocab: Arc<Vocabulary>,
    split: Split,
    triples: Vec<Triple>,
    seen: HashSet<(u32, u32, ObjectKey)>,
    by_subject: HashMap<EntityId, Vec<u32>>,
    by_relation: HashMap<RelationId, Vec<u32>>,
    by_pair: HashMap<(EntityId, RelationId), Vec<u32>>,
}

impl KnowledgeGraph {
    fn build(vocab: Arc<Vocabulary>, split: Split, triples: Vec<Triple>) -> Self {
        let mut seen = HashSet::with_capacity(triples.len());
        let mut by_subject: HashMap<EntityId, Vec<u32>> = HashMap::new();
        let mut by_relation: HashMap<RelationId, Vec<u32>> = HashMap::new();
        let mut by_pair: HashMap<(EntityId, RelationId), Vec<u32>> = HashMap::new();
        for (i, t) in triples.iter().enumerate() {
            let i = i as u32;
            seen.insert((t.subject.0, t.relation.0, t.object.key()));
            by_subject.entry(t.subject).or_default().push(i);
            by_relation.entry(t.relation).or_default().push(i);
            by_pair.entry((t.subject, t.relation)).or_default().push(i);
        }
        Self {
            vocab,
            split,
            triples,
            seen,
            by_subject,
            by_relation,
            by_pair,
        }
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn vocab_arc(&self) -> Arc<Vocabulary> {
        Arc::clone(&self.vocab)
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, subject: EntityId, relation: RelationId, object: Object) -> bool {
        self.seen
            .contains(&(subject.0, relation.0, object.key()))
    }

    pub fn subject_triples(&self, subject: EntityId) -> impl Iterator<Item = &Triple> + '_ {
        self.by_subject
            .get(&subject)
            .into_iter()
            .flatten()
            .map(move |&i| &self.triples[i as usize])
    }

    pub fn relation_triples(&self, relation: RelationId) -> impl Iterator<Item = &Triple> + '_ {
        self.by_relation
            .get(&relation)
            .into_iter()
            .flatten()
            .map(move |&i| &self.triples[i as usize])
    }

    pub fn objects_of(&self, subject: EntityId, relation: RelationId) -> Vec<Object> {
        self.by_pair
            .get(&(subject, relation))
            .into_iter()
            .flatten()
            .map(|&i| self.triples[i as usize].object)
            .collect()
    }

    /// Distinct `(subject, relation)` pairs, ordered by id.
    pub fn pairs(&self) -> Vec<(EntityId, RelationId)> {
        let mut pairs: Vec<_> = self.by_pair.keys().copied().collect();
        pairs.sort_unstable();
        pairs
    }

    /// Group triples by `(subject, relation)`.
    ///
    /// Groups come back ordered by `(subject, relation)` id and form a
    /// partition of the triple set.
    pub fn kvsall_groups(&self) -> Vec<KvsAllGroup> {
        self.pairs()
            .into_iter()
            .map(|(s, r)| KvsAllGroup {
                subject: s,
                relation: r,
                objects: self.objects_of(s, r),
            })
            .collect()
    }

    /// All triples with the given subject, optionally excluding one
    /// relation. Unknown subjects yield the empty set.
    pub fn neighborhood(&self, subject: EntityId, exclude: Option<RelationId>) -> Vec<Triple> {
        self.subject_triples(subject)
            .filter(|t| Some(t.relation) != exclude)
            .copied()
            .collect()
    }

    /// Triples rendered as id-string tuples, for set comparisons and
    /// file output. Literal objects use their shortest decimal form.
    pub fn triple_strings(&self) -> BTreeSet<(String, String, String)> {
        self.triples
            .iter()
            .map(|t| self.triple_to_strings(t))
            .collect()
    }

    pub fn triple_to_strings(&self, t: &Triple) -> (String, String, String) {
        let s = self.vocab.entity_id_str(t.subject).to_owned();
        let r = self.vocab.relation_id_str(t.relation).to_owned();
        let o = match t.object {
            Object::Entity(e) => self.vocab.entity_id_str(e).to_owned(),
            Object::Literal(v) => format!("{v}"),
        };
        (s, r, o)
    }
}

/// Label map from opaque ids to display strings, two-column TSV on disk.
#[derive(Clone, Debug, Default)]
pub struct LabelMap {
    entries: HashMap<String, String>,
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: &str, label: &str) {
        self.entries.insert(id.to_owned(), label.to_owned());
    }

    pub fn get(&self, id: &str) -> Option<&str> {
        self.entries.get(id).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Load from a two-column TSV file (id, label).
    pub fn load(path: &std::path::Path) -> Result<Self, KgError> {
        let text = std::fs::read_to_string(path).map_err(|source| KgError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut map = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (id, label) = line.split_once('\t').ok_or_else(|| KgError::Parse {
                path: path.display().to_string(),
                line: lineno + 1,
                message: "expected two tab-separated columns".to_owned(),
            })?;
            map.insert(id.trim(), label.trim());
        }
        Ok(map)
    }
}

/// Attach labels from `map` to every entity and relation id in the graph.
///
/// Ids are preserved; triples are never dropped. Ids without a label are
/// reported back as warnings.
pub fn apply_label_map(g: &KnowledgeGraph, map: &LabelMap) -> (KnowledgeGraph, Vec<String>) {
    let mut vocab = (*g.vocab).clone();
    let warnings = relabel_vocab(&mut vocab, map);
    let relabeled = KnowledgeGraph {
        vocab: Arc::new(vocab),
        ..g.clone()
    };
    (relabeled, warnings)
}

fn relabel_vocab(vocab: &mut Vocabulary, map: &LabelMap) -> Vec<String> {
    let mut warnings = Vec::new();
    for e in vocab.entities().collect::<Vec<_>>() {
        let id = vocab.entity_id_str(e).to_owned();
        match map.get(&id) {
            Some(label) if !label.is_empty() => {
                vocab.set_entity_label(e, label).expect("non-empty label");
            }
            _ => warnings.push(format!("no label for entity `{id}`")),
        }
    }
    for r in vocab.relations().collect::<Vec<_>>() {
        let id = vocab.relation_id_str(r).to_owned();
        match map.get(&id) {
            Some(label) if !label.is_empty() => {
                vocab.set_relation_label(r, label).expect("non-empty label");
            }
            _ => warnings.push(format!("no label for relation `{id}`")),
        }
    }
    warnings
}

/// Multi-split corpus sharing one vocabulary.
#[derive(Clone, Debug)]
pub struct Corpus {
    vocab: Arc<Vocabulary>,
    graphs: BTreeMap<Split, KnowledgeGraph>,
    reports: BTreeMap<Split, LoadReport>,
}

impl Corpus {
    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn vocab_arc(&self) -> Arc<Vocabulary> {
        Arc::clone(&self.vocab)
    }

    pub fn graph(&self, split: Split) -> Option<&KnowledgeGraph> {
        self.graphs.get(&split)
    }

    pub fn graphs(&self) -> impl Iterator<Item = &KnowledgeGraph> {
        self.graphs.values()
    }

    pub fn report(&self, split: Split) -> Option<&LoadReport> {
        self.reports.get(&split)
    }

    /// Relabel the shared vocabulary in place across every split.
    pub fn apply_label_map(&mut self, map: &LabelMap) -> Vec<String> {
        let mut vocab = (*self.vocab).clone();
        let warnings = relabel_vocab(&mut vocab, map);
        let vocab = Arc::new(vocab);
        for g in self.graphs.values_mut() {
            g.vocab = Arc::clone(&vocab);
        }
        self.vocab = vocab;
        warnings
    }
}

/// Incremental corpus construction: interleaves file loading and
/// programmatic assembly, then freezes everything behind one vocabulary.
#[derive(Debug, Default)]
pub struct CorpusBuilder {
    vocab: Vocabulary,
    pending: BTreeMap<Split, PendingSplit>,
    reports: BTreeMap<Split, LoadReport>,
}

#[derive(Debug, Default)]
struct PendingSplit {
    triples: Vec<Triple>,
    seen: HashSet<(u32, u32, ObjectKey)>,
}

impl PendingSplit {
    fn push(&mut self, t: Triple) -> bool {
        if self.seen.insert((t.subject.0, t.relation.0, t.object.key())) {
            self.triples.push(t);
            true
        } else {
            false
        }
    }
}

impl CorpusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vocab_mut(&mut self) -> &mut Vocabulary {
        &mut self.vocab
    }

    /// Load one split file into the shared vocabulary. Loading several
    /// files into the same split merges their triples and reports.
    pub fn load_split(
        &mut self,
        split: Split,
        path: &std::path::Path,
        format: TripleFormat,
        literal_mode: bool,
    ) -> Result<&LoadReport, KgError> {
        let report = load::load_into(
            &mut self.vocab,
            self.pending.entry(split).or_default(),
            path,
            format,
            literal_mode,
        )?;
        let merged = self.reports.entry(split).or_default();
        if merged.path.is_empty() {
            merged.path = report.path;
        } else {
            merged.path.push_str(" + ");
            merged.path.push_str(&report.path);
        }
        merged.parsed_lines += report.parsed_lines;
        merged.triples = report.triples;
        merged.duplicates += report.duplicates;
        merged.rejected_non_numeric += report.rejected_non_numeric;
        merged.warnings.extend(report.warnings);
        Ok(&self.reports[&split])
    }

    pub fn add_entity_triple(&mut self, split: Split, s: &str, r: &str, o: &str) {
        let s = self.vocab.intern_entity(s);
        let r = self
            .vocab
            .intern_relation(r, RelationKind::Object)
            .expect("object-property");
        let o = Object::Entity(self.vocab.intern_entity(o));
        self.pending.entry(split).or_default().push(Triple {
            subject: s,
            relation: r,
            object: o,
        });
    }

    pub fn add_literal_triple(&mut self, split: Split, s: &str, r: &str, value: f64) {
        let s = self.vocab.intern_entity(s);
        let r = self
            .vocab
            .intern_relation(r, RelationKind::Data)
            .expect("data-property");
        self.pending.entry(split).or_default().push(Triple {
            subject: s,
            relation: r,
            object: Object::Literal(value),
        });
    }

    pub fn apply_label_map(&mut self, map: &LabelMap) -> Vec<String> {
        relabel_vocab(&mut self.vocab, map)
    }

    pub fn finish(self) -> Corpus {
        let vocab = Arc::new(self.vocab);
        let graphs = self
            .pending
            .into_iter()
            .map(|(split, pending)| {
                (
                    split,
                    KnowledgeGraph::build(Arc::clone(&vocab), split, pending.triples),
                )
            })
            .collect();
        Corpus {
            vocab,
            graphs,
            reports: self.reports,
        }
    }
}
