//! Entity-ranking evaluation: ranks of the true entity under raw or
//! filtered settings, and the MRR / Hits@k summary over a query set.
//!
//! Ties are resolved by mean rank: a block of equal scores shares the
//! average of the positions it spans. With a floor-scored majority this
//! avoids the optimistic-rank inflation a naive `rank = 1 + #greater`
//! would produce.

use std::collections::HashSet;

use ralp_core::{EntityId, Scalar, ScoreVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("true entity {0:?} is outside the score vector domain")]
    TruthOutsideDomain(EntityId),

    #[error("cannot compute metrics over an empty rank list")]
    EmptyRankList,
}

/// Raw ranks all entities; filtered removes known positives other than
/// the truth before ranking.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankSetting {
    Raw,
    Filtered,
}

impl std::str::FromStr for RankSetting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" => Ok(RankSetting::Raw),
            "filtered" => Ok(RankSetting::Filtered),
            other => Err(format!("unknown rank setting `{other}`")),
        }
    }
}

/// Mean rank of the true entity, kept exact as a multiple of one half.
///
/// `rank = 1 + |greater| + |ties|/2` where ties exclude the truth. The
/// integer-valued statistic used by the metrics rounds halves up.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rank {
    twice: u64,
}

impl Rank {
    fn from_counts(greater: u64, ties: u64) -> Self {
        Rank {
            twice: 2 + 2 * greater + ties,
        }
    }

    /// Wrap an already-computed integer rank (e.g. from a ranks file).
    pub fn from_value(rank: u64) -> Self {
        assert!(rank >= 1, "ranks start at 1");
        Rank { twice: 2 * rank }
    }

    /// The exact mean rank as (numerator, 2).
    pub fn exact_halves(&self) -> (u64, u64) {
        (self.twice, 2)
    }

    /// Integer rank statistic, halves rounded up.
    pub fn value(&self) -> u64 {
        self.twice.div_ceil(2)
    }
}

/// Result of ranking one `(s, r, ?)` query.
#[derive(Clone, Debug)]
pub struct RankResult {
    pub truth: EntityId,
    pub rank: Rank,
    pub setting: RankSetting,
}

/// Rank the true entity within a score vector.
///
/// In the filtered setting every known positive except the truth is
/// removed from the comparison set first.
pub fn rank_true_entity<F: Scalar>(
    scores: &ScoreVector<F>,
    truth: EntityId,
    known_positives: &HashSet<EntityId>,
    setting: RankSetting,
) -> Result<Rank, EvalError> {
    if !scores.contains(truth) {
        return Err(EvalError::TruthOutsideDomain(truth));
    }
    let truth_score = scores.get(truth);
    let mut greater = 0u64;
    let mut ties = 0u64;
    for (entity, score) in scores.iter() {
        if entity == truth {
            continue;
        }
        if setting == RankSetting::Filtered && known_positives.contains(&entity) {
            continue;
        }
        if score > truth_score {
            greater += 1;
        } else if score == truth_score {
            ties += 1;
        }
    }
    Ok(Rank::from_counts(greater, ties))
}

/// MRR and Hits@{1,3,10} over a set of rank statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport<F> {
    pub mrr: F,
    /// `(k, hits@k)` for k in {1, 3, 10}.
    pub hits: [(u32, F); 3],
    pub n_queries: usize,
}

impl<F: Scalar> MetricsReport<F> {
    pub fn hits_at(&self, k: u32) -> Option<F> {
        self.hits.iter().find(|(kk, _)| *kk == k).map(|(_, v)| *v)
    }
}

/// `mrr = mean(1/rank)`, `hits@k = mean(rank <= k)`.
pub fn compute_metrics<F: Scalar>(ranks: &[Rank]) -> Result<MetricsReport<F>, EvalError> {
    if ranks.is_empty() {
        return Err(EvalError::EmptyRankList);
    }
    let n = F::of(ranks.len() as f64);
    let mrr = ranks
        .iter()
        .map(|r| F::one() / F::of(r.value() as f64))
        .sum::<F>()
        / n;
    let hits = [1u32, 3, 10].map(|k| {
        let hit = ranks.iter().filter(|r| r.value() <= u64::from(k)).count();
        (k, F::of(hit as f64) / n)
    });
    Ok(MetricsReport {
        mrr,
        hits,
        n_queries: ranks.len(),
    })
}

/// Metrics report at the default precision.
pub type MetricsReportF64 = MetricsReport<f64>;

#[cfg(test)]
mod tests {
    use super::*;
    use ralp_core::ScoreVector;

    fn vector(scores: &[f64]) -> ScoreVector<f64> {
        let mut v = ScoreVector::with_floor(scores.len(), 0.0);
        for (i, &s) in scores.iter().enumerate() {
            if s != 0.0 {
                v.set(EntityId(i as u32), s);
            }
        }
        v
    }

    #[test]
    fn strictly_highest_score_ranks_first() {
        let v = vector(&[0.1, 0.9, 0.3]);
        let rank = rank_true_entity(&v, EntityId(1), &HashSet::new(), RankSetting::Raw).unwrap();
        assert_eq!(rank.value(), 1);
    }

    #[test]
    fn full_tie_of_five_gives_mean_rank_three() {
        let v = ScoreVector::with_floor(5, 0.0_f64);
        let rank = rank_true_entity(&v, EntityId(2), &HashSet::new(), RankSetting::Raw).unwrap();
        assert_eq!(rank.value(), 3);
        assert_eq!(rank.exact_halves(), (6, 2));
    }

    #[test]
    fn half_ranks_round_up() {
        // two-way tie at the top: mean rank 1.5 rounds to 2
        let v = vector(&[0.9, 0.9, 0.1]);
        let rank = rank_true_entity(&v, EntityId(0), &HashSet::new(), RankSetting::Raw).unwrap();
        assert_eq!(rank.exact_halves(), (3, 2));
        assert_eq!(rank.value(), 2);
    }

    #[test]
    fn filtering_removes_other_positives() {
        let v = vector(&[0.9, 0.8, 0.7, 0.1]);
        let truth = EntityId(2);
        let positives: HashSet<EntityId> =
            [EntityId(0), EntityId(1), EntityId(2)].into_iter().collect();
        let raw = rank_true_entity(&v, truth, &positives, RankSetting::Raw).unwrap();
        let filtered = rank_true_entity(&v, truth, &positives, RankSetting::Filtered).unwrap();
        assert_eq!(raw.value(), 3);
        assert_eq!(filtered.value(), 1);
    }

    #[test]
    fn truth_outside_domain_is_a_contract_violation() {
        let v = vector(&[0.5]);
        let err = rank_true_entity(&v, EntityId(9), &HashSet::new(), RankSetting::Raw);
        assert!(matches!(err, Err(EvalError::TruthOutsideDomain(_))));
    }

    #[test]
    fn metrics_all_rank_one() {
        let ranks = vec![Rank::from_counts(0, 0); 4];
        let m = compute_metrics::<f64>(&ranks).unwrap();
        assert_eq!(m.mrr, 1.0);
        assert!(m.hits.iter().all(|&(_, h)| h == 1.0));
    }

    #[test]
    fn metrics_ranks_one_and_two() {
        let ranks = vec![Rank::from_counts(0, 0), Rank::from_counts(1, 0)];
        let m = compute_metrics::<f64>(&ranks).unwrap();
        assert!((m.mrr - 0.75).abs() < 1e-12);
        assert_eq!(m.hits_at(1).unwrap(), 0.5);
        assert_eq!(m.hits_at(3).unwrap(), 1.0);
    }

    #[test]
    fn metrics_analytic_four_ninths() {
        let ranks = vec![
            Rank::from_counts(1, 0),
            Rank::from_counts(1, 0),
            Rank::from_counts(2, 0),
        ];
        let m = compute_metrics::<f64>(&ranks).unwrap();
        assert!((m.mrr - 4.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn empty_rank_list_rejected() {
        assert!(matches!(
            compute_metrics::<f64>(&[]),
            Err(EvalError::EmptyRankList)
        ));
    }
}
