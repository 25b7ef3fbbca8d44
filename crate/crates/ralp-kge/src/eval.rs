//! Ranking evaluation of a trained table: score all tails per test
//! query and delegate to the ranking module.

use std::collections::{HashMap, HashSet};

use ralp_core::math::sigmoid;
use ralp_core::{EntityId, KnowledgeGraph, Object, RelationId, Scalar, ScoreVector};
use ralp_eval::{compute_metrics, rank_true_entity, MetricsReport, Rank, RankSetting};

use crate::table::{distmult_score, EmbeddingTable};
use crate::KgeError;

/// Known positives per `(subject, relation)` pair across splits, for
/// filtered ranking.
pub fn known_positives(
    graphs: &[&KnowledgeGraph],
) -> HashMap<(EntityId, RelationId), HashSet<EntityId>> {
    let mut map: HashMap<(EntityId, RelationId), HashSet<EntityId>> = HashMap::new();
    for g in graphs {
        for t in g.triples() {
            if let Object::Entity(o) = t.object {
                map.entry((t.subject, t.relation)).or_default().insert(o);
            }
        }
    }
    map
}

#[derive(Clone, Debug)]
pub struct EvalOutcome<F> {
    pub metrics: MetricsReport<F>,
    /// Each ranked query with its rank, in evaluation order.
    pub ranks: Vec<(ralp_core::Triple, Rank)>,
    pub skipped: usize,
    pub warnings: Vec<String>,
}

/// Rank the true tail of every entity triple in `g_eval`.
///
/// Queries touching ids outside the trained table are skipped with a
/// warning (the benchmark setting is transductive).
pub fn evaluate<F: Scalar>(
    table: &EmbeddingTable<F>,
    g_eval: &KnowledgeGraph,
    positives: &HashMap<(EntityId, RelationId), HashSet<EntityId>>,
    setting: RankSetting,
) -> Result<EvalOutcome<F>, KgeError> {
    let mut ranks = Vec::new();
    let mut skipped = 0usize;
    let mut warnings = Vec::new();
    let empty = HashSet::new();
    for t in g_eval.triples() {
        let Object::Entity(truth) = t.object else {
            continue;
        };
        if !table.contains_entity(t.subject)
            || !table.contains_entity(truth)
            || !table.contains_relation(t.relation)
        {
            skipped += 1;
            warnings.push(format!(
                "skipped query with ids outside the trained table: {:?}",
                g_eval.triple_to_strings(t)
            ));
            continue;
        }
        let mut scores = ScoreVector::with_floor(table.n_entities, F::zero());
        for e in 0..table.n_entities as u32 {
            let z = distmult_score(table, t.subject, t.relation, EntityId(e))?;
            scores.set(EntityId(e), sigmoid(z));
        }
        let pair_positives = positives.get(&(t.subject, t.relation)).unwrap_or(&empty);
        let rank = rank_true_entity(&scores, truth, pair_positives, setting)
            .map_err(|e| KgeError::Eval(e.to_string()))?;
        ranks.push((*t, rank));
    }
    if ranks.is_empty() {
        return Err(KgeError::NoRankableQueries);
    }
    let plain: Vec<Rank> = ranks.iter().map(|(_, r)| *r).collect();
    let metrics = compute_metrics(&plain).map_err(|e| KgeError::Eval(e.to_string()))?;
    Ok(EvalOutcome {
        metrics,
        ranks,
        skipped,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ralp_core::kg::{CorpusBuilder, Split};

    #[test]
    fn perfectly_separating_table_scores_mrr_one() {
        let mut b = CorpusBuilder::new();
        b.add_entity_triple(Split::Train, "a", "r", "b");
        b.add_entity_triple(Split::Test, "a", "r", "b");
        let corpus = b.finish();
        let test = corpus.graph(Split::Test).unwrap();

        // craft a table where (a, r, b) outscores the self-loop (a, r, a)
        let mut table = EmbeddingTable::<f64>::zeros(2, 1, 2);
        table.entities[0..2].copy_from_slice(&[1.0, 1.0]); // a
        table.entities[2..4].copy_from_slice(&[2.0, 2.0]); // b
        table.relations[0..2].copy_from_slice(&[1.0, 1.0]); // r

        let positives = known_positives(&[corpus.graph(Split::Train).unwrap()]);
        let out = evaluate(&table, test, &positives, RankSetting::Filtered).unwrap();
        assert_eq!(out.metrics.mrr, 1.0);
    }

    #[test]
    fn random_table_matches_brute_force_ranks_on_a_toy() {
        let mut b = CorpusBuilder::new();
        for (s, o) in [("a", "b"), ("c", "d"), ("e", "a")] {
            b.add_entity_triple(Split::Train, s, "r", o);
        }
        b.add_entity_triple(Split::Test, "a", "r", "d");
        let corpus = b.finish();
        let train = corpus.graph(Split::Train).unwrap();
        let test = corpus.graph(Split::Test).unwrap();
        let n = corpus.vocab().n_entities();

        let table = EmbeddingTable::<f64>::xavier(n, 1, 8, 77);
        let positives = known_positives(&[train, test]);
        let out = evaluate(&table, test, &positives, RankSetting::Raw).unwrap();

        // brute force: sort sigmoid scores for the single query
        let subject = corpus.vocab().entity("a").unwrap();
        let relation = corpus.vocab().relation("r").unwrap();
        let truth = corpus.vocab().entity("d").unwrap();
        let mut scored: Vec<(u32, f64)> = (0..n as u32)
            .map(|e| {
                let z = distmult_score(&table, subject, relation, EntityId(e)).unwrap();
                (e, sigmoid(z))
            })
            .collect();
        scored.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap());
        let brute_rank = scored.iter().position(|&(e, _)| e == truth.0).unwrap() as u64 + 1;
        assert_eq!(out.ranks[0].1.value(), brute_rank);
    }

    #[test]
    fn queries_with_unknown_ids_are_skipped() {
        let mut b = CorpusBuilder::new();
        b.add_entity_triple(Split::Train, "a", "r", "b");
        b.add_entity_triple(Split::Test, "a", "r", "b");
        b.add_entity_triple(Split::Test, "ghost", "r", "b");
        let corpus = b.finish();
        let test = corpus.graph(Split::Test).unwrap();

        // table only covers the two train entities
        let table = EmbeddingTable::<f64>::xavier(2, 1, 4, 5);
        let out = evaluate(&table, test, &HashMap::new(), RankSetting::Raw).unwrap();
        assert_eq!(out.skipped, 1);
        assert_eq!(out.ranks.len(), 1);
    }
}
