//! Calibration and accuracy metrics over interval predictions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_core::{KnowledgeGraph, RelationId, RelationKind, Scalar};

use crate::predict::IntervalPrediction;
use crate::NumericError;

/// Interval coverage rate and mean interval width.
///
/// Coverage counts boundary hits: `y_min <= y <= y_max`.
pub fn interval_metrics<F: Scalar>(
    preds: &[IntervalPrediction<F>],
    truths: &[F],
) -> Result<(F, F), NumericError> {
    if preds.len() != truths.len() {
        return Err(NumericError::LengthMismatch {
            preds: preds.len(),
            truths: truths.len(),
        });
    }
    if preds.is_empty() {
        return Err(NumericError::EmptyInput);
    }
    let n = F::of(preds.len() as f64);
    let covered = preds
        .iter()
        .zip(truths)
        .filter(|(p, &y)| p.covers(y))
        .count();
    let icr = F::of(covered as f64) / n;
    let iw = preds.iter().map(|p| p.width()).sum::<F>() / n;
    Ok((icr, iw))
}

pub fn mean_squared_error<F: Scalar>(estimates: &[F], truths: &[F]) -> Result<F, NumericError> {
    paired_mean(estimates, truths, |e, y| (e - y) * (e - y))
}

pub fn mean_absolute_error<F: Scalar>(estimates: &[F], truths: &[F]) -> Result<F, NumericError> {
    paired_mean(estimates, truths, |e, y| (e - y).abs())
}

fn paired_mean<F: Scalar>(
    estimates: &[F],
    truths: &[F],
    term: impl Fn(F, F) -> F,
) -> Result<F, NumericError> {
    if estimates.len() != truths.len() {
        return Err(NumericError::LengthMismatch {
            preds: estimates.len(),
            truths: truths.len(),
        });
    }
    if estimates.is_empty() {
        return Err(NumericError::EmptyInput);
    }
    let total = estimates
        .iter()
        .zip(truths)
        .map(|(&e, &y)| term(e, y))
        .sum::<F>();
    Ok(total / F::of(estimates.len() as f64))
}

/// Select `n` distinct data-properties uniformly without replacement.
pub fn select_property_subset(
    graph: &KnowledgeGraph,
    n: usize,
    seed: u64,
) -> Result<Vec<RelationId>, NumericError> {
    let vocab = graph.vocab();
    let mut properties: Vec<RelationId> = vocab
        .relations()
        .filter(|&r| vocab.relation_kind(r) == RelationKind::Data)
        .filter(|&r| graph.relation_triples(r).next().is_some())
        .collect();
    if n > properties.len() {
        return Err(NumericError::SubsetTooLarge {
            requested: n,
            available: properties.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    properties.shuffle(&mut rng);
    let mut chosen: Vec<RelationId> = properties.into_iter().take(n).collect();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Drop gross outliers by leave-one-out z-score: each value is compared
/// against the mean and population stddev of the *other* values, which
/// keeps a single extreme point detectable in small samples. Values are
/// kept whenever the remaining sample gives no usable spread (fewer than
/// two other points, or zero spread with an exactly matching value), and
/// a constant list always passes through unchanged.
pub fn filter_outliers<F: Scalar>(values: &[F], z_threshold: F) -> Vec<F> {
    assert!(z_threshold > F::zero(), "threshold must be positive");
    let n = values.len();
    if n <= 2 {
        return values.to_vec();
    }
    let sum: F = values.iter().copied().sum();
    let sum_sq: F = values.iter().map(|&v| v * v).sum();
    // fast path: zero overall variance
    let mean = sum / F::of(n as f64);
    if values.iter().all(|&v| v == mean) {
        return values.to_vec();
    }
    let m = F::of((n - 1) as f64);
    values
        .iter()
        .copied()
        .filter(|&v| {
            let mu = (sum - v) / m;
            let var = ((sum_sq - v * v) / m - mu * mu).max(F::zero());
            let sigma = var.sqrt();
            if sigma == F::zero() {
                // the rest agree exactly; v is an outlier unless it matches
                v == mu
            } else {
                ((v - mu) / sigma).abs() <= z_threshold
            }
        })
        .collect()
}
