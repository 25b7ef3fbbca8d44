//! The discrete search space: instruction variants per stage crossed
//! with few-shot demo subsets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ralp_lm::{LmGateway, LmRequest};
use ralp_prompt::{composer_demos, scorer_demos, KvsAllDemo, PromptState};

use crate::MiproError;

/// Index into the candidate grid:
/// (composer instruction, scorer instruction, demo subset).
pub type CandidateKey = (usize, usize, usize);

#[derive(Clone, Debug)]
pub struct CandidatePool {
    pub composer_instructions: Vec<String>,
    pub scorer_instructions: Vec<String>,
    pub demo_subsets: Vec<Vec<KvsAllDemo>>,
    pub token_cap: usize,
}

impl CandidatePool {
    pub fn new(
        composer_instructions: Vec<String>,
        scorer_instructions: Vec<String>,
        demo_subsets: Vec<Vec<KvsAllDemo>>,
        token_cap: usize,
    ) -> Result<Self, MiproError> {
        if composer_instructions.is_empty()
            || scorer_instructions.is_empty()
            || demo_subsets.is_empty()
        {
            return Err(MiproError::EmptyPool);
        }
        Ok(Self {
            composer_instructions,
            scorer_instructions,
            demo_subsets,
            token_cap,
        })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (
            self.composer_instructions.len(),
            self.scorer_instructions.len(),
            self.demo_subsets.len(),
        )
    }

    pub fn grid_size(&self) -> usize {
        let (a, b, c) = self.dims();
        a * b * c
    }

    /// Materialize the prompt state for one grid point.
    pub fn candidate(&self, key: CandidateKey) -> PromptState {
        let (i, j, k) = key;
        let subset = &self.demo_subsets[k];
        PromptState {
            composer_instruction: self.composer_instructions[i].clone(),
            scorer_instruction: self.scorer_instructions[j].clone(),
            composer_demos: composer_demos(subset),
            scorer_demos: scorer_demos(subset),
            token_cap: self.token_cap,
        }
    }

    pub fn keys(&self) -> Vec<CandidateKey> {
        let (a, b, c) = self.dims();
        let mut keys = Vec::with_capacity(a * b * c);
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    keys.push((i, j, k));
                }
            }
        }
        keys
    }
}

/// Style hints rotated through the instruction meta-prompt so repeated
/// proposals explore different phrasings.
const TIPS: [&str; 6] = [
    "Be concise and imperative.",
    "Adopt a domain-expert persona.",
    "Spell out the reasoning steps the assistant should take.",
    "Emphasize the exact output format.",
    "Encourage weighing evidence before answering.",
    "Mention common mistakes to avoid.",
];

/// Generate `n` instruction variants for one stage. Candidate 0 is
/// always the seed instruction; duplicates from the LM are collapsed
/// and the pool is padded with tagged seed mutations up to `n`.
/// Any LM failure degrades to the seed-only pool with a warning.
pub fn propose_instruction_candidates(
    gateway: &LmGateway,
    seed_instruction: &str,
    n: usize,
    task_summary: &str,
) -> (Vec<String>, Vec<String>) {
    assert!(n >= 1, "candidate count must be at least 1");
    let mut warnings = Vec::new();
    let mut pool = vec![seed_instruction.to_owned()];
    for i in 1..n {
        let tip = TIPS[(i - 1) % TIPS.len()];
        let prompt = format!(
            "You are improving the instruction of an LLM program.\n\
             Task summary: {task_summary}\n\
             Current instruction:\n{seed_instruction}\n\n\
             Hint: {tip}\n\
             Write improved instruction variant {i}. Reply with the new instruction text only."
        );
        match gateway.complete(&LmRequest::from_prompt(prompt)) {
            Ok(resp) => {
                let text = resp.text.trim().trim_matches('"').trim().to_owned();
                if text.is_empty() {
                    warnings.push(format!("empty instruction proposal for variant {i}"));
                } else if !pool.contains(&text) {
                    pool.push(text);
                }
            }
            Err(e) => {
                warnings.push(format!("instruction proposal failed, using seed only: {e}"));
                return (vec![seed_instruction.to_owned()], warnings);
            }
        }
    }
    let mut tag = 1;
    while pool.len() < n {
        let padded = format!("{seed_instruction} (variant {tag})");
        if !pool.contains(&padded) {
            pool.push(padded);
        }
        tag += 1;
    }
    (pool, warnings)
}

/// Sample `m` demo subsets of size `k`, without replacement inside each
/// subset; subset 0 is always empty (the zero-shot arm).
pub fn sample_demo_subsets<T: Clone>(
    d_few: &[T],
    m: usize,
    k: usize,
    seed: u64,
) -> Result<Vec<Vec<T>>, MiproError> {
    let mut subsets = vec![Vec::new()];
    if m <= 1 {
        return Ok(subsets);
    }
    if k > d_few.len() {
        return Err(MiproError::SubsetTooLarge {
            requested: k,
            available: d_few.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..d_few.len()).collect();
    for _ in 1..m {
        indices.shuffle(&mut rng);
        let mut chosen: Vec<usize> = indices[..k].to_vec();
        chosen.sort_unstable();
        subsets.push(chosen.into_iter().map(|i| d_few[i].clone()).collect());
    }
    Ok(subsets)
}

/// Cap the few-shot pool, sampling uniformly when over the limit. The
/// optimizer works from at most 30 training examples.
pub fn select_few_shot<T: Clone>(pairs: &[T], max: usize, seed: u64) -> Vec<T> {
    if pairs.len() <= max {
        return pairs.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..pairs.len()).collect();
    indices.shuffle(&mut rng);
    let mut chosen: Vec<usize> = indices[..max].to_vec();
    chosen.sort_unstable();
    chosen.into_iter().map(|i| pairs[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ralp_lm::ScriptedLm;
    use std::sync::Arc;

    fn gateway(lm: ScriptedLm) -> LmGateway {
        LmGateway::new(Arc::new(lm), 100_000)
    }

    #[test]
    fn n_equals_one_returns_just_the_seed() {
        let gw = gateway(ScriptedLm::new("whatever"));
        let (pool, warnings) = propose_instruction_candidates(&gw, "seed text", 1, "task");
        assert_eq!(pool, vec!["seed text".to_owned()]);
        assert!(warnings.is_empty());
        assert_eq!(gw.stats().calls, 0);
    }

    #[test]
    fn scripted_variants_fill_the_pool() {
        let gw = gateway(
            ScriptedLm::new("fallback")
                .when_contains("variant 1", "Improved A")
                .when_contains("variant 2", "Improved B"),
        );
        let (pool, _) = propose_instruction_candidates(&gw, "seed", 3, "task");
        assert_eq!(pool, vec!["seed".to_owned(), "Improved A".into(), "Improved B".into()]);
    }

    #[test]
    fn duplicate_emissions_are_padded_with_seed_mutations() {
        let gw = gateway(ScriptedLm::new("Same answer"));
        let (pool, _) = propose_instruction_candidates(&gw, "seed", 4, "task");
        assert_eq!(pool.len(), 4);
        assert_eq!(pool[0], "seed");
        assert_eq!(pool[1], "Same answer");
        assert!(pool[2].starts_with("seed (variant"));
        let unique: std::collections::HashSet<_> = pool.iter().collect();
        assert_eq!(unique.len(), 4);
    }

    #[test]
    fn zero_shot_only_when_m_is_one() {
        let demos = vec!["a", "b", "c"];
        let subsets = sample_demo_subsets(&demos, 1, 2, 7).unwrap();
        assert_eq!(subsets, vec![Vec::<&str>::new()]);
    }

    #[test]
    fn full_size_subsets_equal_the_pool() {
        let demos = vec!["a", "b", "c"];
        let subsets = sample_demo_subsets(&demos, 3, 3, 7).unwrap();
        for subset in &subsets[1..] {
            let mut sorted = subset.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, demos);
        }
    }

    #[test]
    fn subsets_are_deterministic_under_seed() {
        let demos: Vec<usize> = (0..10).collect();
        let a = sample_demo_subsets(&demos, 4, 3, 99).unwrap();
        let b = sample_demo_subsets(&demos, 4, 3, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_demo_subsets(&demos, 4, 3, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn oversized_subset_is_an_error() {
        let demos = vec!["a"];
        assert!(matches!(
            sample_demo_subsets(&demos, 2, 5, 7),
            Err(MiproError::SubsetTooLarge { .. })
        ));
    }
}
