//! Embedding storage and the bilinear-diagonal triple score.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_core::{EntityId, RelationId, Scalar};

use crate::KgeError;

/// Row-major entity and relation embeddings of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingTable<F> {
    pub dim: usize,
    pub n_entities: usize,
    pub n_relations: usize,
    pub entities: Vec<F>,
    pub relations: Vec<F>,
}

impl<F: Scalar> EmbeddingTable<F> {
    pub fn zeros(n_entities: usize, n_relations: usize, dim: usize) -> Self {
        Self {
            dim,
            n_entities,
            n_relations,
            entities: vec![F::zero(); n_entities * dim],
            relations: vec![F::zero(); n_relations * dim],
        }
    }

    /// Xavier-uniform initialization: rows drawn from
    /// `U(-sqrt(3/d), sqrt(3/d))`.
    pub fn xavier(n_entities: usize, n_relations: usize, dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = (3.0 / dim as f64).sqrt();
        let mut sample = |n: usize| -> Vec<F> {
            (0..n)
                .map(|_| F::of(rng.random_range(-bound..bound)))
                .collect()
        };
        Self {
            dim,
            n_entities,
            n_relations,
            entities: sample(n_entities * dim),
            relations: sample(n_relations * dim),
        }
    }

    pub fn entity(&self, e: EntityId) -> &[F] {
        let i = e.0 as usize * self.dim;
        &self.entities[i..i + self.dim]
    }

    pub fn relation(&self, r: RelationId) -> &[F] {
        let i = r.0 as usize * self.dim;
        &self.relations[i..i + self.dim]
    }

    pub fn contains_entity(&self, e: EntityId) -> bool {
        (e.0 as usize) < self.n_entities
    }

    pub fn contains_relation(&self, r: RelationId) -> bool {
        (r.0 as usize) < self.n_relations
    }

    pub fn all_finite(&self) -> bool {
        self.entities.iter().chain(&self.relations).all(|v| v.is_finite())
    }
}

/// `score(h, r, t) = sum_i E[h]_i * R[r]_i * E[t]_i`.
pub fn distmult_score<F: Scalar>(
    table: &EmbeddingTable<F>,
    head: EntityId,
    relation: RelationId,
    tail: EntityId,
) -> Result<F, KgeError> {
    if !table.contains_entity(head) || !table.contains_entity(tail) {
        return Err(KgeError::IdOutOfRange);
    }
    if !table.contains_relation(relation) {
        return Err(KgeError::IdOutOfRange);
    }
    let h = table.entity(head);
    let r = table.relation(relation);
    let t = table.entity(tail);
    let mut total = F::zero();
    for i in 0..table.dim {
        total += h[i] * r[i] * t[i];
    }
    Ok(total)
}
