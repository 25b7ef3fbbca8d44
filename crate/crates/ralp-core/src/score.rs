//! Dense per-entity score vectors.

use crate::kg::EntityId;
use crate::scalar::Scalar;

/// Scores in `[0, 1]` for every entity of a universe.
///
/// Entities never assigned a score carry the floor value, so a vector is
/// total over the universe by construction. Scores are per-triple
/// likelihoods, not a distribution: they need not sum to one.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreVector<F> {
    scores: Vec<F>,
    explicit: Vec<bool>,
    floor: F,
}

impl<F: Scalar> ScoreVector<F> {
    /// All-floor vector over a universe of `n_entities`.
    pub fn with_floor(n_entities: usize, floor: F) -> Self {
        Self {
            scores: vec![floor; n_entities],
            explicit: vec![false; n_entities],
            floor,
        }
    }

    pub fn floor(&self) -> F {
        self.floor
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn contains(&self, entity: EntityId) -> bool {
        (entity.0 as usize) < self.scores.len()
    }

    /// Assign a score. Panics if the value leaves `[0, 1]` or the entity
    /// is outside the universe; both are caller bugs.
    pub fn set(&mut self, entity: EntityId, score: F) {
        assert!(
            score >= F::zero() && score <= F::one(),
            "score {score} outside [0, 1]"
        );
        let i = entity.0 as usize;
        self.scores[i] = score;
        self.explicit[i] = true;
    }

    pub fn get(&self, entity: EntityId) -> F {
        self.scores[entity.0 as usize]
    }

    /// Entities that were explicitly assigned, i.e. not at floor by default.
    pub fn explicit_count(&self) -> usize {
        self.explicit.iter().filter(|&&e| e).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EntityId, F)> + '_ {
        self.scores
            .iter()
            .enumerate()
            .map(|(i, &s)| (EntityId(i as u32), s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_fills_unassigned_entries() {
        let mut v = ScoreVector::with_floor(5, 0.0_f64);
        v.set(EntityId(1), 0.9);
        v.set(EntityId(3), 0.1);
        assert_eq!(v.get(EntityId(0)), 0.0);
        assert_eq!(v.get(EntityId(1)), 0.9);
        assert_eq!(v.explicit_count(), 2);
        assert_eq!(v.len(), 5);
    }

    #[test]
    #[should_panic(expected = "outside [0, 1]")]
    fn out_of_range_score_panics() {
        let mut v = ScoreVector::with_floor(1, 0.0_f64);
        v.set(EntityId(0), 1.5);
    }
}
