//! Knowledge graph enrichment: sweep every distinct `(subject, relation)`
//! pair of the training graph once, query the composer/scorer pipeline,
//! and keep predicted objects that score above the confidence threshold
//! and are absent from the training set.

use std::io::Write;
use std::path::Path;

use ralp_core::{EntityId, KnowledgeGraph, Object, RelationId, RelationKind, Scalar};
use ralp_prompt::ScorePipeline;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnrichError {
    #[error("confidence threshold must exceed 0.5, got {0}")]
    ThresholdTooLow(f64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct EnrichmentConfig<F> {
    theta: F,
    pub max_candidates_per_pair: usize,
}

impl<F: Scalar> EnrichmentConfig<F> {
    pub fn new(theta: F) -> Result<Self, EnrichError> {
        if theta <= F::of(0.5) {
            return Err(EnrichError::ThresholdTooLow(theta.widen()));
        }
        Ok(Self {
            theta,
            max_candidates_per_pair: 25,
        })
    }

    pub fn theta(&self) -> F {
        self.theta
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MissingTriple<F> {
    pub subject: EntityId,
    pub relation: RelationId,
    pub object: EntityId,
    pub score: F,
}

/// Accumulated high-confidence predictions, disjoint from the source
/// training set, sorted by id strings for stable output.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MissingTripleSet<F> {
    pub triples: Vec<MissingTriple<F>>,
}

impl<F> MissingTripleSet<F> {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnrichReport {
    pub pairs_swept: usize,
    pub pairs_failed: usize,
    pub warnings: Vec<String>,
}

/// Run the sweep over the pipeline's graph.
///
/// Repeated `(s, p)` pairs in the triple list collapse to a single
/// composer call; failures on one pair are counted and skipped.
pub fn enrich<F: Scalar>(
    pipeline: &ScorePipeline<'_, F>,
    cfg: &EnrichmentConfig<F>,
) -> (MissingTripleSet<F>, EnrichReport) {
    let graph = pipeline.graph;
    let vocab = graph.vocab();
    let universe: Vec<EntityId> = vocab.entities().collect();
    let mut report = EnrichReport::default();
    let mut found: Vec<MissingTriple<F>> = Vec::new();

    for (subject, relation) in graph.pairs() {
        if vocab.relation_kind(relation) != RelationKind::Object {
            continue;
        }
        report.pairs_swept += 1;
        let (mut candidates, warnings) =
            match pipeline.compose_candidates(subject, relation, &universe) {
                Ok(r) => r,
                Err(e) => {
                    report.pairs_failed += 1;
                    report.warnings.push(format!(
                        "pair ({}, {}) skipped: {e}",
                        vocab.entity_id_str(subject),
                        vocab.relation_id_str(relation)
                    ));
                    continue;
                }
            };
        report.warnings.extend(warnings);
        candidates.truncate(cfg.max_candidates_per_pair);
        let (scores, warnings) = match pipeline.score_candidates(subject, relation, &candidates) {
            Ok(r) => r,
            Err(e) => {
                report.pairs_failed += 1;
                report.warnings.push(format!(
                    "pair ({}, {}) skipped at scoring: {e}",
                    vocab.entity_id_str(subject),
                    vocab.relation_id_str(relation)
                ));
                continue;
            }
        };
        report.warnings.extend(warnings);
        for candidate in &candidates {
            let score = scores.get(candidate.entity);
            if score > cfg.theta()
                && !graph.contains(subject, relation, Object::Entity(candidate.entity))
            {
                found.push(MissingTriple {
                    subject,
                    relation,
                    object: candidate.entity,
                    score,
                });
            }
        }
    }

    found.sort_by(|a, b| {
        let ka = (
            vocab.entity_id_str(a.subject),
            vocab.relation_id_str(a.relation),
            vocab.entity_id_str(a.object),
        );
        let kb = (
            vocab.entity_id_str(b.subject),
            vocab.relation_id_str(b.relation),
            vocab.entity_id_str(b.object),
        );
        ka.cmp(&kb)
    });
    found.dedup_by(|a, b| {
        a.subject == b.subject && a.relation == b.relation && a.object == b.object
    });
    (MissingTripleSet { triples: found }, report)
}

/// Write `train + missing` as a drop-in replacement split file: original
/// triples in load order, then the missing set in its sorted order.
pub fn write_augmented_split<F: Scalar>(
    g_train: &KnowledgeGraph,
    missing: &MissingTripleSet<F>,
    path: &Path,
) -> Result<(), EnrichError> {
    let io_err = |source: std::io::Error| EnrichError::Io {
        path: path.display().to_string(),
        source,
    };
    let vocab = g_train.vocab();
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    for t in g_train.triples() {
        let (s, r, o) = g_train.triple_to_strings(t);
        writeln!(file, "{s}\t{r}\t{o}").map_err(io_err)?;
    }
    for m in &missing.triples {
        writeln!(
            file,
            "{}\t{}\t{}",
            vocab.entity_id_str(m.subject),
            vocab.relation_id_str(m.relation),
            vocab.entity_id_str(m.object)
        )
        .map_err(io_err)?;
    }
    Ok(())
}
