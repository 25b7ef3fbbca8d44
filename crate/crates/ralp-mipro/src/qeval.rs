//! The trial objective Q: mean cross-entropy of the scorer over a fixed
//! labeled panel.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_core::math::{binary_cross_entropy, clamp_prob};
use ralp_core::{EntityId, KnowledgeGraph, Object, RelationId, Scalar};

use crate::MiproError;

/// One labeled triple: `positive` marks whether it is asserted true.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledExample {
    pub subject: EntityId,
    pub relation: RelationId,
    pub object: EntityId,
    pub positive: bool,
}

/// Mean cross-entropy of `phi` over the batch, probabilities clamped to
/// `[1e-7, 1 - 1e-7]` before the logarithms.
pub fn evaluate_q<F, Phi>(batch: &[LabeledExample], mut phi: Phi) -> Result<F, MiproError>
where
    F: Scalar,
    Phi: FnMut(&LabeledExample) -> Result<F, MiproError>,
{
    if batch.is_empty() {
        return Err(MiproError::EmptyBatch);
    }
    let eps = F::of(1e-7);
    let mut total = F::zero();
    for example in batch {
        let y_hat = clamp_prob(phi(example)?, eps);
        total += binary_cross_entropy(example.positive, y_hat);
    }
    Ok(total / F::of(batch.len() as f64))
}

/// Build the fixed evaluation panel for a run: `size / 2` positive
/// triples sampled from `source`, each paired with one uniform
/// tail-corruption negative filtered against every graph in `known`.
pub fn build_eval_panel(
    source: &KnowledgeGraph,
    known: &[&KnowledgeGraph],
    size: usize,
    seed: u64,
) -> Vec<LabeledExample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entity_triples: Vec<(EntityId, RelationId, EntityId)> = source
        .triples()
        .iter()
        .filter_map(|t| match t.object {
            Object::Entity(o) => Some((t.subject, t.relation, o)),
            Object::Literal(_) => None,
        })
        .collect();
    if entity_triples.is_empty() {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..entity_triples.len()).collect();
    order.shuffle(&mut rng);
    let n_pos = (size / 2).max(1).min(entity_triples.len());
    let n_entities = source.vocab().n_entities() as u32;

    let mut panel = Vec::with_capacity(n_pos * 2);
    for &i in order.iter().take(n_pos) {
        let (s, r, o) = entity_triples[i];
        panel.push(LabeledExample {
            subject: s,
            relation: r,
            object: o,
            positive: true,
        });
        // corrupt the tail, avoiding every known positive
        for _attempt in 0..200 {
            let candidate = EntityId(rng.random_range(0..n_entities));
            let is_known = known
                .iter()
                .any(|g| g.contains(s, r, Object::Entity(candidate)));
            if !is_known {
                panel.push(LabeledExample {
                    subject: s,
                    relation: r,
                    object: candidate,
                    positive: false,
                });
                break;
            }
        }
    }
    panel
}
