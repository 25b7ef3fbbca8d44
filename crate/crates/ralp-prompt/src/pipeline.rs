//! The two-stage scoring pipeline: a composer proposes candidate tail
//! entities, a scorer assigns each a likelihood in `[0, 1]`.

use std::collections::HashMap;

use ralp_core::{EntityId, KnowledgeGraph, RelationId, Scalar, ScoreVector};
use ralp_lm::{LmGateway, LmRequest};

use crate::render::initialize_prompt;
use crate::{parse, Demo, FieldSpec, PromptError, PromptState, Signature};

/// How raw scorer outputs map into `[0, 1]`.
///
/// `Auto` treats a batch as probabilities when every value already lies
/// in `[0, 1]` and as logits otherwise; the whole batch goes through the
/// same map so the induced ranking is preserved.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ScoreScale {
    #[default]
    Auto,
    /// Values are probabilities; out-of-range values clamp with a warning.
    Probability,
    /// Values are logits; everything passes through the sigmoid.
    Logit,
}

/// One scored candidate from the pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidatePrediction<F> {
    pub entity: EntityId,
    /// In `[0, 1]`; zero until the scorer stage assigns a value.
    pub raw_score: F,
    pub rationale: String,
}

/// Pipeline over one graph, gateway and prompt state.
pub struct ScorePipeline<'a, F: Scalar> {
    pub graph: &'a KnowledgeGraph,
    pub gateway: &'a LmGateway,
    pub state: &'a PromptState,
    pub scale: ScoreScale,
    pub floor: F,
    /// Universes at most this large are listed inside the composer
    /// prompt; larger ones are omitted and flagged.
    pub universe_in_prompt_max: usize,
}

impl<'a, F: Scalar> ScorePipeline<'a, F> {
    pub fn new(graph: &'a KnowledgeGraph, gateway: &'a LmGateway, state: &'a PromptState) -> Self {
        Self {
            graph,
            gateway,
            state,
            scale: ScoreScale::Auto,
            floor: F::zero(),
            universe_in_prompt_max: 500,
        }
    }

    pub fn with_scale(mut self, scale: ScoreScale) -> Self {
        self.scale = scale;
        self
    }

    fn composer_signature(&self, with_universe: bool) -> Result<Signature, PromptError> {
        let mut inputs = vec![
            FieldSpec::new("subject", "the subject entity"),
            FieldSpec::new("relation", "the relation to complete"),
        ];
        if with_universe {
            inputs.push(FieldSpec::new(
                "entities",
                "the entities candidates may be drawn from",
            ));
        }
        Signature::new(
            "composer",
            inputs,
            vec![FieldSpec::new(
                "candidates",
                "one line: candidates: [name1, name2, ...]",
            )],
            self.state.composer_instruction.clone(),
        )
    }

    fn scorer_signature(&self) -> Result<Signature, PromptError> {
        Signature::new(
            "scorer",
            vec![
                FieldSpec::new("subject", "the subject entity"),
                FieldSpec::new("relation", "the relation"),
                FieldSpec::new("candidates", "candidate entities to score"),
            ],
            vec![FieldSpec::new(
                "scores",
                "fenced block, one `name<TAB>score<TAB>rationale` line per candidate",
            )],
            self.state.scorer_instruction.clone(),
        )
    }

    /// Ask the composer for candidate objects of `(subject, relation, ?)`,
    /// restricted to `universe`.
    pub fn compose_candidates(
        &self,
        subject: EntityId,
        relation: RelationId,
        universe: &[EntityId],
    ) -> Result<(Vec<CandidatePrediction<F>>, Vec<String>), PromptError> {
        let vocab = self.graph.vocab();
        let mut warnings = Vec::new();
        let inline_universe = universe.len() <= self.universe_in_prompt_max;
        if !inline_universe {
            warnings.push(format!(
                "universe of {} entities omitted from composer prompt",
                universe.len()
            ));
        }
        let sig = self.composer_signature(inline_universe)?;
        let mut query = vec![
            ("subject".to_owned(), vocab.entity_text(subject).to_owned()),
            ("relation".to_owned(), vocab.relation_text(relation).to_owned()),
        ];
        if inline_universe {
            let listing = universe
                .iter()
                .map(|&e| vocab.entity_text(e))
                .collect::<Vec<_>>()
                .join(", ");
            query.push(("entities".to_owned(), listing));
        }
        let prompt = initialize_prompt(
            &sig,
            &self.state.composer_demos,
            &query,
            self.state.token_cap,
            self.gateway.estimator(),
        )?;
        let response = self.gateway.complete(&LmRequest::from_prompt(prompt))?;
        let names = parse::parse_candidate_list(&response.text)?;

        let resolver = resolver_for(self.graph, universe);
        let mut seen = std::collections::HashSet::new();
        let mut candidates = Vec::new();
        for name in names {
            match resolver.get(&name.to_lowercase()) {
                Some(&entity) => {
                    if seen.insert(entity) {
                        candidates.push(CandidatePrediction {
                            entity,
                            raw_score: F::zero(),
                            rationale: String::new(),
                        });
                    }
                }
                None => warnings.push(format!("composer proposed unknown entity `{name}`")),
            }
        }
        Ok((candidates, warnings))
    }

    /// Ask the scorer for a likelihood per candidate; all non-candidates
    /// get the floor value.
    pub fn score_candidates(
        &self,
        subject: EntityId,
        relation: RelationId,
        candidates: &[CandidatePrediction<F>],
    ) -> Result<(ScoreVector<F>, Vec<String>), PromptError> {
        let vocab = self.graph.vocab();
        let mut vector = ScoreVector::with_floor(vocab.n_entities(), self.floor);
        let mut warnings = Vec::new();
        if candidates.is_empty() {
            return Ok((vector, warnings));
        }

        let sig = self.scorer_signature()?;
        let listing = candidates
            .iter()
            .map(|c| vocab.entity_text(c.entity))
            .collect::<Vec<_>>()
            .join(", ");
        let query = vec![
            ("subject".to_owned(), vocab.entity_text(subject).to_owned()),
            ("relation".to_owned(), vocab.relation_text(relation).to_owned()),
            ("candidates".to_owned(), format!("[{listing}]")),
        ];
        let prompt = initialize_prompt(
            &sig,
            &self.state.scorer_demos,
            &query,
            self.state.token_cap,
            self.gateway.estimator(),
        )?;
        let response = self.gateway.complete(&LmRequest::from_prompt(prompt))?;
        let rows = parse::parse_score_lines(&response.text)?;

        let cand_entities: Vec<EntityId> = candidates.iter().map(|c| c.entity).collect();
        let resolver = resolver_for(self.graph, &cand_entities);
        let mut raw_by_entity: HashMap<EntityId, f64> = HashMap::new();
        for (name, raw, _rationale) in rows {
            match resolver.get(&name.to_lowercase()) {
                Some(&entity) => {
                    if raw_by_entity.contains_key(&entity) {
                        warnings.push(format!("scorer repeated `{name}`; keeping first value"));
                    } else {
                        raw_by_entity.insert(entity, raw);
                    }
                }
                None => warnings.push(format!("scorer mentioned non-candidate `{name}`")),
            }
        }

        let raws: Vec<f64> = cand_entities
            .iter()
            .filter_map(|e| raw_by_entity.get(e).copied())
            .collect();
        let batch_as_logits = match self.scale {
            ScoreScale::Logit => true,
            ScoreScale::Probability => false,
            ScoreScale::Auto => raws.iter().any(|&r| !(0.0..=1.0).contains(&r)),
        };
        for &entity in &cand_entities {
            match raw_by_entity.get(&entity) {
                Some(&raw) => {
                    let mapped = if batch_as_logits {
                        ralp_core::math::sigmoid(raw)
                    } else if (0.0..=1.0).contains(&raw) {
                        raw
                    } else {
                        warnings.push(format!(
                            "clamped out-of-range probability {raw} for `{}`",
                            vocab.entity_text(entity)
                        ));
                        raw.clamp(0.0, 1.0)
                    };
                    vector.set(entity, F::of(mapped));
                }
                None => warnings.push(format!(
                    "scorer omitted candidate `{}`; kept at floor",
                    vocab.entity_text(entity)
                )),
            }
        }
        Ok((vector, warnings))
    }

    /// Score every entity for the tail query `(subject, relation, ?)`.
    pub fn score_query(
        &self,
        subject: EntityId,
        relation: RelationId,
    ) -> Result<(ScoreVector<F>, Vec<String>), PromptError> {
        let universe: Vec<EntityId> = self.graph.vocab().entities().collect();
        let (candidates, mut warnings) = self.compose_candidates(subject, relation, &universe)?;
        let (vector, score_warnings) = self.score_candidates(subject, relation, &candidates)?;
        warnings.extend(score_warnings);
        Ok((vector, warnings))
    }

    /// The string-parameterized scoring function over one triple:
    /// compose, force the queried tail into the candidate set, score.
    pub fn score_triple(
        &self,
        head: EntityId,
        relation: RelationId,
        tail: EntityId,
    ) -> Result<(F, Vec<String>), PromptError> {
        let universe: Vec<EntityId> = self.graph.vocab().entities().collect();
        let (mut candidates, mut warnings) =
            self.compose_candidates(head, relation, &universe)?;
        if !candidates.iter().any(|c| c.entity == tail) {
            candidates.push(CandidatePrediction {
                entity: tail,
                raw_score: F::zero(),
                rationale: String::new(),
            });
        }
        let (vector, score_warnings) = self.score_candidates(head, relation, &candidates)?;
        warnings.extend(score_warnings);
        Ok((vector.get(tail), warnings))
    }
}

/// Case-insensitive name lookup over a universe slice: labels and raw
/// ids both resolve; on collision the earlier universe entry wins.
fn resolver_for(graph: &KnowledgeGraph, universe: &[EntityId]) -> HashMap<String, EntityId> {
    let vocab = graph.vocab();
    let mut map = HashMap::new();
    for &e in universe {
        map.entry(vocab.entity_id_str(e).to_lowercase()).or_insert(e);
        if let Some(label) = vocab.entity_label(e) {
            map.entry(label.to_lowercase()).or_insert(e);
        }
    }
    map
}

/// Derive stage demos for a prompt state from KvsAll pairs.
pub fn attach_demos(state: &mut PromptState, pairs: &[crate::KvsAllDemo]) {
    state.composer_demos = pairs.iter().map(|p| p.to_composer_demo()).collect();
    state.scorer_demos = pairs.iter().map(|p| p.to_scorer_demo()).collect();
}

/// Group a graph's KvsAll structure into label-space demo pairs,
/// skipping data-property groups.
pub fn kvsall_demo_pool(graph: &KnowledgeGraph) -> Vec<crate::KvsAllDemo> {
    let vocab = graph.vocab();
    graph
        .kvsall_groups()
        .into_iter()
        .filter_map(|group| {
            let objects: Vec<String> = group
                .objects
                .iter()
                .filter_map(|o| o.as_entity())
                .map(|e| vocab.entity_text(e).to_owned())
                .collect();
            if objects.is_empty() {
                return None;
            }
            Some(crate::KvsAllDemo {
                subject: vocab.entity_text(group.subject).to_owned(),
                relation: vocab.relation_text(group.relation).to_owned(),
                objects,
            })
        })
        .collect()
}

/// A demo list's worth of [`Demo`]s for the composer stage.
pub fn composer_demos(pairs: &[crate::KvsAllDemo]) -> Vec<Demo> {
    pairs.iter().map(|p| p.to_composer_demo()).collect()
}

/// A demo list's worth of [`Demo`]s for the scorer stage.
pub fn scorer_demos(pairs: &[crate::KvsAllDemo]) -> Vec<Demo> {
    pairs.iter().map(|p| p.to_scorer_demo()).collect()
}
