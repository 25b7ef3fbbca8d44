//! Adam with bias correction over the embedding parameters.

use ralp_core::Scalar;

use crate::grad::GradTable;
use crate::table::EmbeddingTable;

#[derive(Clone, Debug)]
pub struct Adam<F> {
    lr: F,
    beta1: F,
    beta2: F,
    eps: F,
    step_count: u64,
    m_entities: Vec<F>,
    v_entities: Vec<F>,
    m_relations: Vec<F>,
    v_relations: Vec<F>,
}

impl<F: Scalar> Adam<F> {
    pub fn new(table: &EmbeddingTable<F>, lr: F) -> Self {
        Self {
            lr,
            beta1: F::of(0.9),
            beta2: F::of(0.999),
            eps: F::of(1e-8),
            step_count: 0,
            m_entities: vec![F::zero(); table.entities.len()],
            v_entities: vec![F::zero(); table.entities.len()],
            m_relations: vec![F::zero(); table.relations.len()],
            v_relations: vec![F::zero(); table.relations.len()],
        }
    }

    pub fn step(&mut self, table: &mut EmbeddingTable<F>, grads: &GradTable<F>) {
        self.step_count += 1;
        let correction1 = F::one() - self.beta1.powi(self.step_count as i32);
        let correction2 = F::one() - self.beta2.powi(self.step_count as i32);
        Self::update(
            &mut table.entities,
            &grads.entities,
            &mut self.m_entities,
            &mut self.v_entities,
            self.lr,
            self.beta1,
            self.beta2,
            self.eps,
            correction1,
            correction2,
        );
        Self::update(
            &mut table.relations,
            &grads.relations,
            &mut self.m_relations,
            &mut self.v_relations,
            self.lr,
            self.beta1,
            self.beta2,
            self.eps,
            correction1,
            correction2,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn update(
        params: &mut [F],
        grads: &[F],
        m: &mut [F],
        v: &mut [F],
        lr: F,
        beta1: F,
        beta2: F,
        eps: F,
        correction1: F,
        correction2: F,
    ) {
        for i in 0..params.len() {
            let g = grads[i];
            m[i] = beta1 * m[i] + (F::one() - beta1) * g;
            v[i] = beta2 * v[i] + (F::one() - beta2) * g * g;
            let m_hat = m[i] / correction1;
            let v_hat = v[i] / correction2;
            params[i] -= lr * m_hat / (v_hat.sqrt() + eps);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_fresh_parameters_unchanged() {
        let mut table = EmbeddingTable::<f64>::xavier(3, 2, 4, 1);
        let snapshot = table.clone();
        let mut adam = Adam::new(&table, 0.1);
        let grads = GradTable::zeros_like(&table);
        adam.step(&mut table, &grads);
        adam.step(&mut table, &grads);
        assert_eq!(table, snapshot);
    }

    #[test]
    fn nonzero_gradient_moves_parameters_against_it() {
        let mut table = EmbeddingTable::<f64>::zeros(1, 1, 2);
        let mut adam = Adam::new(&table, 0.01);
        let mut grads = GradTable::zeros_like(&table);
        grads.entities[0] = 1.0;
        grads.entities[1] = -1.0;
        adam.step(&mut table, &grads);
        assert!(table.entities[0] < 0.0);
        assert!(table.entities[1] > 0.0);
    }
}
