//! LM-backed retrieval against scripted backends.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_lm::{LmGateway, Reply, ScriptedLm};
use ralp_owl::samples::random_family_graph;
use ralp_owl::{
    generate_fewshot, jaccard, llm_retrieve, ClassExpression, NamespaceMode, Reasoner, Role,
    Syntax,
};
use ralp_prompt::PromptState;

#[test]
fn echo_backend_reaches_jaccard_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graph = random_family_graph(&mut rng, 8, 25);
    let concept = ClassExpression::exists(
        Role::named("hasChild"),
        ClassExpression::atomic("female"),
    );
    let reasoner = Reasoner::new(&graph);
    let (truth, _) = reasoner.retrieve(&concept);

    // scripted backend echoing the oracle answer
    let answer: Vec<String> = truth
        .iter()
        .map(|&e| graph.vocab().entity_id_str(e).to_owned())
        .collect();
    let reply = format!("instances: [{}]", answer.join(", "));
    let gw = LmGateway::new(Arc::new(ScriptedLm::new(Reply::Text(reply))), 1_000_000);
    let state = PromptState::default_for("generic", 100_000);

    let (fewshot, _) = generate_fewshot(
        &gw,
        &state,
        &graph,
        &concept,
        &truth,
        Syntax::Manchester,
        NamespaceMode::Without,
    );
    // the example's answer set always equals the supplied truth
    let example_answers: BTreeSet<String> = fewshot.answer.iter().cloned().collect();
    let truth_names: BTreeSet<String> = answer.iter().cloned().collect();
    assert_eq!(example_answers, truth_names);

    let (predicted, warnings) = llm_retrieve(
        &gw,
        &state,
        &graph,
        &concept,
        &[fewshot],
        Syntax::Manchester,
        NamespaceMode::Without,
    )
    .unwrap();
    assert!(warnings.is_empty());
    assert_eq!(jaccard::<f64>(&predicted, &truth), 1.0);
}

#[test]
fn unknown_names_are_dropped_and_duplicates_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let graph = random_family_graph(&mut rng, 5, 10);
    let gw = LmGateway::new(
        Arc::new(ScriptedLm::new("instances: [p0, p0, atlantis]")),
        1_000_000,
    );
    let state = PromptState::default_for("generic", 100_000);
    let concept = ClassExpression::atomic("person");
    let (predicted, warnings) = llm_retrieve(
        &gw,
        &state,
        &graph,
        &concept,
        &[],
        Syntax::Dl,
        NamespaceMode::With,
    )
    .unwrap();
    assert_eq!(predicted.len(), 1);
    assert!(warnings.iter().any(|w| w.contains("atlantis")));
}

#[test]
fn fewshot_falls_back_to_template_when_the_lm_fails() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let graph = random_family_graph(&mut rng, 5, 10);
    // empty responses trigger the deterministic fallback
    let gw = LmGateway::new(Arc::new(ScriptedLm::new("")), 1_000_000);
    let state = PromptState::default_for("generic", 100_000);
    let concept = ClassExpression::atomic("female");
    let reasoner = Reasoner::new(&graph);
    let (truth, _) = reasoner.retrieve(&concept);

    let (example, warnings) = generate_fewshot(
        &gw,
        &state,
        &graph,
        &concept,
        &truth,
        Syntax::Manchester,
        NamespaceMode::Without,
    );
    assert!(!warnings.is_empty());
    assert!(example.cot.contains("female"));
    assert_eq!(example.answer.len(), truth.len());
}
