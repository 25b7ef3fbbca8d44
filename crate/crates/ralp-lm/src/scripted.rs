//! Deterministic scripted backend for tests and offline runs.

use std::sync::{Arc, Mutex};

use crate::estimate::TokenEstimator;
use crate::{LanguageModel, LmError, LmRequest, LmResponse, TokenUsage};

type PredicateFn = Arc<dyn Fn(&str) -> bool + Send + Sync>;
type ReplyFn = Arc<dyn Fn(&str) -> String + Send + Sync>;

/// Prompt predicate for a scripted rule.
#[derive(Clone)]
pub enum Matcher {
    /// Case-insensitive substring match over the flattened prompt.
    Contains(String),
    /// Arbitrary predicate; must be pure.
    Pred(PredicateFn),
}

impl Matcher {
    fn matches(&self, prompt: &str) -> bool {
        match self {
            Matcher::Contains(needle) => {
                prompt.to_lowercase().contains(&needle.to_lowercase())
            }
            Matcher::Pred(f) => f(prompt),
        }
    }
}

/// Canned response: fixed text, or a pure function of the prompt.
#[derive(Clone)]
pub enum Reply {
    Text(String),
    Fn(ReplyFn),
}

impl Reply {
    fn render(&self, prompt: &str) -> String {
        match self {
            Reply::Text(t) => t.clone(),
            Reply::Fn(f) => f(prompt),
        }
    }
}

impl From<&str> for Reply {
    fn from(s: &str) -> Self {
        Reply::Text(s.to_owned())
    }
}

impl From<String> for Reply {
    fn from(s: String) -> Self {
        Reply::Text(s)
    }
}

/// Ordered rule list with a mandatory default; the first matching rule
/// wins. Responses are a pure function of the prompt, so identical
/// requests always produce identical responses.
pub struct ScriptedLm {
    rules: Vec<(Matcher, Reply)>,
    default: Reply,
    estimator: TokenEstimator,
    prompts_seen: Mutex<Vec<String>>,
}

impl ScriptedLm {
    pub fn new(default: impl Into<Reply>) -> Self {
        Self {
            rules: Vec::new(),
            default: default.into(),
            estimator: TokenEstimator::default(),
            prompts_seen: Mutex::new(Vec::new()),
        }
    }

    pub fn when_contains(mut self, needle: impl Into<String>, reply: impl Into<Reply>) -> Self {
        self.rules
            .push((Matcher::Contains(needle.into()), reply.into()));
        self
    }

    pub fn when(
        mut self,
        pred: impl Fn(&str) -> bool + Send + Sync + 'static,
        reply: impl Into<Reply>,
    ) -> Self {
        self.rules.push((Matcher::Pred(Arc::new(pred)), reply.into()));
        self
    }

    /// Dynamic default computed from the prompt; must be pure.
    pub fn with_default_fn(mut self, f: impl Fn(&str) -> String + Send + Sync + 'static) -> Self {
        self.default = Reply::Fn(Arc::new(f));
        self
    }

    pub fn call_count(&self) -> usize {
        self.prompts_seen.lock().unwrap().len()
    }

    pub fn prompts_seen(&self) -> Vec<String> {
        self.prompts_seen.lock().unwrap().clone()
    }
}

impl LanguageModel for ScriptedLm {
    fn complete(&self, req: &LmRequest) -> Result<LmResponse, LmError> {
        let prompt = req.flat_text();
        let text = self
            .rules
            .iter()
            .find(|(m, _)| m.matches(&prompt))
            .map(|(_, r)| r.render(&prompt))
            .unwrap_or_else(|| self.default.render(&prompt));
        self.prompts_seen.lock().unwrap().push(prompt.clone());
        Ok(LmResponse {
            usage: TokenUsage {
                prompt_tokens: self.estimator.estimate(&prompt) as u64,
                completion_tokens: self.estimator.estimate(&text) as u64,
            },
            text,
        })
    }

    fn name(&self) -> &str {
        "scripted"
    }
}
