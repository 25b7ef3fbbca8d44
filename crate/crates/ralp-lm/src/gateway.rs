//! The gateway every LM call in the workspace goes through: enforces the
//! token budget before any network traffic and keeps an audit log of
//! (request hash, response hash, latency) records.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::estimate::TokenEstimator;
use crate::{LanguageModel, LmError, LmRequest, LmResponse};

/// One audited call.
#[derive(Clone, Debug)]
pub struct CallRecord {
    pub request_hash: String,
    pub response_hash: String,
    pub latency_ms: u64,
}

/// Aggregate counters for run reports.
#[derive(Clone, Copy, Debug, Default)]
pub struct GatewayStats {
    pub calls: u64,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
}

pub struct LmGateway {
    backend: Arc<dyn LanguageModel>,
    budget: usize,
    estimator: TokenEstimator,
    log: Mutex<Vec<CallRecord>>,
    calls: AtomicU64,
    prompt_tokens: AtomicU64,
    completion_tokens: AtomicU64,
}

impl LmGateway {
    /// `budget` is the context length in estimated tokens.
    pub fn new(backend: Arc<dyn LanguageModel>, budget: usize) -> Self {
        Self {
            backend,
            budget,
            estimator: TokenEstimator::default(),
            log: Mutex::new(Vec::new()),
            calls: AtomicU64::new(0),
            prompt_tokens: AtomicU64::new(0),
            completion_tokens: AtomicU64::new(0),
        }
    }

    pub fn with_estimator(mut self, estimator: TokenEstimator) -> Self {
        self.estimator = estimator;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn estimator(&self) -> &TokenEstimator {
        &self.estimator
    }

    pub fn backend_name(&self) -> &str {
        self.backend.name()
    }

    pub fn complete(&self, req: &LmRequest) -> Result<LmResponse, LmError> {
        let estimated = self.estimator.estimate_request(req);
        if estimated > self.budget {
            return Err(LmError::Budget {
                estimated,
                budget: self.budget,
            });
        }
        let started = Instant::now();
        let resp = self.backend.complete(req)?;
        let latency_ms = started.elapsed().as_millis() as u64;

        self.calls.fetch_add(1, Ordering::Relaxed);
        self.prompt_tokens
            .fetch_add(resp.usage.prompt_tokens, Ordering::Relaxed);
        self.completion_tokens
            .fetch_add(resp.usage.completion_tokens, Ordering::Relaxed);
        self.log.lock().unwrap().push(CallRecord {
            request_hash: short_hash(&req.flat_text()),
            response_hash: short_hash(&resp.text),
            latency_ms,
        });
        Ok(resp)
    }

    pub fn stats(&self) -> GatewayStats {
        GatewayStats {
            calls: self.calls.load(Ordering::Relaxed),
            prompt_tokens: self.prompt_tokens.load(Ordering::Relaxed),
            completion_tokens: self.completion_tokens.load(Ordering::Relaxed),
        }
    }

    pub fn call_log(&self) -> Vec<CallRecord> {
        self.log.lock().unwrap().clone()
    }
}

fn short_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
