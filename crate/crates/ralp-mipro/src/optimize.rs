//! The trial loop: suggest, evaluate, update best.

use std::time::Instant;

use ralp_core::Scalar;
use ralp_prompt::PromptState;

use crate::pool::CandidatePool;
use crate::tpe::{startup_trials, suggest_key, TpeConfig};
use crate::trial::{Mode, Trial, TrialHistory};
use crate::MiproError;

/// Search presets. The trial counts and pool sizes behind the "light"
/// and "medium" names are configuration of this artifact and fully
/// exposed here.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Preset {
    Light,
    Medium,
}

impl Preset {
    pub fn trials(&self) -> usize {
        match self {
            Preset::Light => 10,
            Preset::Medium => 30,
        }
    }

    /// Instruction candidates per stage, seed included.
    pub fn instructions_per_stage(&self) -> usize {
        match self {
            Preset::Light => 3,
            Preset::Medium => 8,
        }
    }

    /// Demo subsets including the zero-shot arm.
    pub fn demo_subsets(&self) -> usize {
        match self {
            Preset::Light => 3,
            Preset::Medium => 6,
        }
    }

    pub fn demos_per_subset(&self) -> usize {
        match self {
            Preset::Light => 2,
            Preset::Medium => 4,
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "light" => Ok(Preset::Light),
            "medium" => Ok(Preset::Medium),
            other => Err(format!("unknown preset `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OptimizeConfig {
    pub trials: usize,
    pub mode: Mode,
    pub seed: u64,
    pub tpe: TpeConfig,
}

impl OptimizeConfig {
    pub fn new(trials: usize, mode: Mode, seed: u64) -> Self {
        Self {
            trials,
            mode,
            seed,
            tpe: TpeConfig {
                n_startup: startup_trials(trials),
                ..TpeConfig::default()
            },
        }
    }
}

pub struct OptimizeOutcome<F> {
    pub best: PromptState,
    pub history: TrialHistory<F>,
    pub warnings: Vec<String>,
}

/// Run exactly `cfg.trials` trials against `objective`.
///
/// Trial 0 always evaluates the seed candidate (key `(0, 0, 0)`: seed
/// instructions, zero-shot), so the initial prompt state is the first
/// incumbent. A failed evaluation records the worst finite score and the
/// run continues.
pub fn optimize<F, O>(
    pool: &CandidatePool,
    cfg: &OptimizeConfig,
    mut objective: O,
) -> Result<OptimizeOutcome<F>, MiproError>
where
    F: Scalar,
    O: FnMut(&PromptState) -> Result<F, MiproError>,
{
    if cfg.trials == 0 {
        return Err(MiproError::NoTrials);
    }
    let mut history = TrialHistory::new(cfg.mode);
    let mut warnings = Vec::new();
    for index in 0..cfg.trials {
        let key = if index == 0 {
            (0, 0, 0)
        } else {
            suggest_key(&history, pool.dims(), &cfg.tpe, cfg.seed)
        };
        let state = pool.candidate(key);
        let started = Instant::now();
        let score = match objective(&state) {
            Ok(score) => score,
            Err(e) => {
                warnings.push(format!("trial {index} failed: {e}"));
                cfg.mode.worst()
            }
        };
        history.push(Trial {
            index,
            key,
            state,
            score,
            wall_ms: started.elapsed().as_millis() as u64,
        });
    }
    let best = history
        .best()
        .expect("at least one trial was recorded")
        .state
        .clone();
    Ok(OptimizeOutcome {
        best,
        history,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed_only_pool() -> CandidatePool {
        CandidatePool::new(
            vec!["compose".into()],
            vec!["score".into()],
            vec![vec![]],
            2048,
        )
        .unwrap()
    }

    #[test]
    fn single_trial_seed_pool_returns_seed() {
        let pool = seed_only_pool();
        let cfg = OptimizeConfig::new(1, Mode::Minimize, 5);
        let out: OptimizeOutcome<f64> = optimize(&pool, &cfg, |_| Ok(0.4)).unwrap();
        assert_eq!(out.best.composer_instruction, "compose");
        assert_eq!(out.history.len(), 1);
        assert_eq!(out.history.best().unwrap().key, (0, 0, 0));
    }

    #[test]
    fn single_candidate_pool_degenerates_to_repeats() {
        let pool = seed_only_pool();
        let cfg = OptimizeConfig::new(5, Mode::Minimize, 5);
        let mut calls = 0;
        let out: OptimizeOutcome<f64> = optimize(&pool, &cfg, |_| {
            calls += 1;
            Ok(0.7)
        })
        .unwrap();
        assert_eq!(calls, 5);
        assert!(out.history.trials().iter().all(|t| t.key == (0, 0, 0)));
        assert!(out.history.trials().iter().all(|t| t.score == 0.7));
    }

    #[test]
    fn failed_trials_record_worst_score_and_continue() {
        let pool = seed_only_pool();
        let cfg = OptimizeConfig::new(3, Mode::Minimize, 5);
        let mut n = 0;
        let out: OptimizeOutcome<f64> = optimize(&pool, &cfg, |_| {
            n += 1;
            if n == 2 {
                Err(MiproError::EmptyBatch)
            } else {
                Ok(0.3)
            }
        })
        .unwrap();
        assert_eq!(out.history.len(), 3);
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.history.trials()[1].score, f64::MAX);
        assert_eq!(out.history.best().unwrap().score, 0.3);
    }
}
