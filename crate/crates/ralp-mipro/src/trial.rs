//! Trial records and the best-so-far bookkeeping.

use ralp_core::Scalar;
use ralp_prompt::PromptState;

use crate::pool::CandidateKey;

/// Whether lower scores (losses) or higher scores (e.g. MRR) win.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Minimize,
    Maximize,
}

impl Mode {
    pub fn better<F: Scalar>(&self, candidate: F, incumbent: F) -> bool {
        match self {
            Mode::Minimize => candidate < incumbent,
            Mode::Maximize => candidate > incumbent,
        }
    }

    /// Sentinel recorded for failed evaluations; never wins a comparison
    /// but stays finite.
    pub fn worst<F: Scalar>(&self) -> F {
        match self {
            Mode::Minimize => F::max_value(),
            Mode::Maximize => F::min_value(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trial<F> {
    pub index: usize,
    pub key: CandidateKey,
    pub state: PromptState,
    pub score: F,
    pub wall_ms: u64,
}

/// Append-only trial sequence tracking the single best candidate under
/// the strict-improvement update rule.
#[derive(Clone, Debug)]
pub struct TrialHistory<F> {
    mode: Mode,
    trials: Vec<Trial<F>>,
    best: Option<usize>,
}

impl<F: Scalar> TrialHistory<F> {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            trials: Vec::new(),
            best: None,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn push(&mut self, trial: Trial<F>) {
        debug_assert!(trial.score.is_finite(), "trial scores must stay finite");
        let replace = match self.best {
            None => true,
            Some(i) => self.mode.better(trial.score, self.trials[i].score),
        };
        if replace {
            self.best = Some(self.trials.len());
        }
        self.trials.push(trial);
    }

    pub fn trials(&self) -> &[Trial<F>] {
        &self.trials
    }

    pub fn len(&self) -> usize {
        self.trials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trials.is_empty()
    }

    pub fn best(&self) -> Option<&Trial<F>> {
        self.best.map(|i| &self.trials[i])
    }

    /// Best score after each trial; a monotone step function by
    /// construction of the update rule.
    pub fn best_so_far_series(&self) -> Vec<F> {
        let mut series = Vec::with_capacity(self.trials.len());
        let mut best: Option<F> = None;
        for t in &self.trials {
            best = Some(match best {
                None => t.score,
                Some(b) if self.mode.better(t.score, b) => t.score,
                Some(b) => b,
            });
            series.push(best.unwrap());
        }
        series
    }
}
