//! Loss and analytic gradients for the two training strategies.

use ralp_core::math::{clamp_prob, sigmoid};
use ralp_core::{EntityId, RelationId, Scalar};

use crate::table::EmbeddingTable;

/// Gradient accumulator shaped like the embedding table.
#[derive(Clone, Debug)]
pub struct GradTable<F> {
    pub entities: Vec<F>,
    pub relations: Vec<F>,
    dim: usize,
}

impl<F: Scalar> GradTable<F> {
    pub fn zeros_like(table: &EmbeddingTable<F>) -> Self {
        Self {
            entities: vec![F::zero(); table.entities.len()],
            relations: vec![F::zero(); table.relations.len()],
            dim: table.dim,
        }
    }

    fn entity_mut(&mut self, e: EntityId) -> &mut [F] {
        let i = e.0 as usize * self.dim;
        &mut self.entities[i..i + self.dim]
    }

    fn relation_mut(&mut self, r: RelationId) -> &mut [F] {
        let i = r.0 as usize * self.dim;
        &mut self.relations[i..i + self.dim]
    }
}

/// One multi-label training example: a `(subject, relation)` group with
/// its full set of true tails.
#[derive(Clone, Debug)]
pub struct KvsAllExample {
    pub subject: EntityId,
    pub relation: RelationId,
    pub targets: Vec<EntityId>,
}

/// One binary example used by the negative-sampling strategy.
#[derive(Clone, Copy, Debug)]
pub struct BinaryExample {
    pub subject: EntityId,
    pub relation: RelationId,
    pub object: EntityId,
    pub positive: bool,
}

/// Per-example inverted-dropout masks for the subject and relation rows
/// (entries are `0` or `1/(1-p)`).
#[derive(Clone, Debug)]
pub struct DropoutMasks<F> {
    pub subject: Vec<F>,
    pub relation: Vec<F>,
}

const PROB_EPS: f64 = 1e-7;

/// Mean multi-label cross-entropy over a KvsAll batch and its analytic
/// gradient. Every entity acts as a binary target for every example;
/// dropout masks, when given, scale the subject and relation rows.
pub fn kvsall_loss_and_grad<F: Scalar>(
    table: &EmbeddingTable<F>,
    batch: &[KvsAllExample],
    masks: Option<&[DropoutMasks<F>]>,
) -> (F, GradTable<F>) {
    let dim = table.dim;
    let n_entities = table.n_entities;
    let eps = F::of(PROB_EPS);
    let mut grads = GradTable::zeros_like(table);
    let mut loss = F::zero();
    // mean over examples and over the entity axis
    let norm = F::of((batch.len() * n_entities) as f64);

    let mut is_target = vec![false; n_entities];
    for (bi, example) in batch.iter().enumerate() {
        for t in &example.targets {
            is_target[t.0 as usize] = true;
        }

        let head_row = table.entity(example.subject);
        let rel_row = table.relation(example.relation);
        let (head, rel): (Vec<F>, Vec<F>) = match masks.map(|m| &m[bi]) {
            Some(mask) => (
                head_row
                    .iter()
                    .zip(&mask.subject)
                    .map(|(&h, &m)| h * m)
                    .collect(),
                rel_row
                    .iter()
                    .zip(&mask.relation)
                    .map(|(&r, &m)| r * m)
                    .collect(),
            ),
            None => (head_row.to_vec(), rel_row.to_vec()),
        };
        // hr = dropped(head) * dropped(rel), shared by every tail
        let hr: Vec<F> = (0..dim).map(|i| head[i] * rel[i]).collect();

        let mut d_head = vec![F::zero(); dim];
        let mut d_rel = vec![F::zero(); dim];
        for e in 0..n_entities {
            let tail = EntityId(e as u32);
            let tail_row = table.entity(tail);
            let mut z = F::zero();
            for i in 0..dim {
                z += hr[i] * tail_row[i];
            }
            let p = sigmoid(z);
            let y = is_target[e];
            loss += ralp_core::math::binary_cross_entropy(y, clamp_prob(p, eps));

            // dL/dz, already normalized
            let g = (p - if y { F::one() } else { F::zero() }) / norm;
            let d_tail = grads.entity_mut(tail);
            for i in 0..dim {
                d_tail[i] += g * hr[i];
                d_head[i] += g * rel[i] * tail_row[i];
                d_rel[i] += g * head[i] * tail_row[i];
            }
        }

        // undo the dropout scaling direction: grads flow through the masks
        let subject_grad = grads.entity_mut(example.subject);
        match masks.map(|m| &m[bi]) {
            Some(mask) => {
                for i in 0..dim {
                    subject_grad[i] += d_head[i] * mask.subject[i];
                }
            }
            None => {
                for i in 0..dim {
                    subject_grad[i] += d_head[i];
                }
            }
        }
        let relation_grad = grads.relation_mut(example.relation);
        match masks.map(|m| &m[bi]) {
            Some(mask) => {
                for i in 0..dim {
                    relation_grad[i] += d_rel[i] * mask.relation[i];
                }
            }
            None => {
                for i in 0..dim {
                    relation_grad[i] += d_rel[i];
                }
            }
        }

        for t in &example.targets {
            is_target[t.0 as usize] = false;
        }
    }
    (loss / norm, grads)
}

/// Mean binary cross-entropy over labeled triples and its gradient.
/// Dropout masks, when given, scale the subject and relation rows the
/// same way the KvsAll path does.
pub fn binary_loss_and_grad<F: Scalar>(
    table: &EmbeddingTable<F>,
    batch: &[BinaryExample],
    masks: Option<&[DropoutMasks<F>]>,
) -> (F, GradTable<F>) {
    let dim = table.dim;
    let eps = F::of(PROB_EPS);
    let mut grads = GradTable::zeros_like(table);
    let mut loss = F::zero();
    let norm = F::of(batch.len() as f64);
    let unit = vec![F::one(); dim];
    for (bi, example) in batch.iter().enumerate() {
        let (mask_s, mask_r) = match masks.map(|m| &m[bi]) {
            Some(mask) => (&mask.subject, &mask.relation),
            None => (&unit, &unit),
        };
        let head: Vec<F> = table
            .entity(example.subject)
            .iter()
            .zip(mask_s)
            .map(|(&h, &m)| h * m)
            .collect();
        let rel: Vec<F> = table
            .relation(example.relation)
            .iter()
            .zip(mask_r)
            .map(|(&r, &m)| r * m)
            .collect();
        let tail = table.entity(example.object).to_vec();
        let mut z = F::zero();
        for i in 0..dim {
            z += head[i] * rel[i] * tail[i];
        }
        let p = sigmoid(z);
        loss += ralp_core::math::binary_cross_entropy(example.positive, clamp_prob(p, eps));
        let g = (p - if example.positive { F::one() } else { F::zero() }) / norm;
        let d_head = grads.entity_mut(example.subject);
        for i in 0..dim {
            d_head[i] += g * rel[i] * tail[i] * mask_s[i];
        }
        let d_rel = grads.relation_mut(example.relation);
        for i in 0..dim {
            d_rel[i] += g * head[i] * tail[i] * mask_r[i];
        }
        let d_tail = grads.entity_mut(example.object);
        for i in 0..dim {
            d_tail[i] += g * head[i] * rel[i];
        }
    }
    (loss / norm, grads)
}
