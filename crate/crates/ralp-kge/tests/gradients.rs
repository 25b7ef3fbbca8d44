//! Analytic gradients verified against central finite differences, at
//! f64 precision where the quotient is numerically trustworthy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ralp_core::kg::{CorpusBuilder, Split};
use ralp_kge::{kvsall_examples, kvsall_loss_and_grad, EmbeddingTable};

#[test]
fn kvsall_gradient_matches_central_differences() {
    let mut b = CorpusBuilder::new();
    for (s, r, o) in [
        ("a", "r", "b"),
        ("a", "r", "c"),
        ("b", "q", "a"),
        ("c", "r", "d"),
        ("d", "q", "b"),
        ("d", "q", "c"),
    ] {
        b.add_entity_triple(Split::Train, s, r, o);
    }
    let g = b.finish().graph(Split::Train).unwrap().clone();
    let batch = kvsall_examples(&g);

    let dim = 6;
    let table = EmbeddingTable::<f64>::xavier(
        g.vocab().n_entities(),
        g.vocab().n_relations(),
        dim,
        42,
    );
    let (_, analytic) = kvsall_loss_and_grad(&table, &batch, None);

    let step = 1e-4;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n_entity_params = table.entities.len();
    let n_params = n_entity_params + table.relations.len();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    while checked < 100 {
        let coord = rng.random_range(0..n_params);
        let mut plus = table.clone();
        let mut minus = table.clone();
        let analytic_g = if coord < n_entity_params {
            plus.entities[coord] += step;
            minus.entities[coord] -= step;
            analytic.entities[coord]
        } else {
            let i = coord - n_entity_params;
            plus.relations[i] += step;
            minus.relations[i] -= step;
            analytic.relations[i]
        };
        let (loss_plus, _) = kvsall_loss_and_grad(&plus, &batch, None);
        let (loss_minus, _) = kvsall_loss_and_grad(&minus, &batch, None);
        let numeric_g = (loss_plus - loss_minus) / (2.0 * step);

        let scale = analytic_g.abs().max(numeric_g.abs()).max(1e-8);
        let rel_err = (analytic_g - numeric_g).abs() / scale;
        worst = worst.max(rel_err);
        assert!(
            rel_err <= 1e-3,
            "coordinate {coord}: analytic {analytic_g} vs numeric {numeric_g} (rel err {rel_err})"
        );
        checked += 1;
    }
    // the check must exercise real gradients, not vacuous zeros
    assert!(worst > 0.0);
}
