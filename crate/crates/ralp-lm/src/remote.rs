//! Remote backend speaking the OpenAI chat-completions wire protocol.

use std::sync::{Condvar, Mutex};
use std::time::Duration;

use serde::Deserialize;
use serde_json::json;

use crate::{LanguageModel, LmError, LmRequest, LmResponse, TokenUsage};

/// Connection settings for an OpenAI-compatible endpoint.
#[derive(Clone, Debug)]
pub struct RemoteConfig {
    /// Base URL, e.g. `http://localhost:8000`. `/v1/chat/completions`
    /// is appended unless the URL already ends with `/chat/completions`.
    pub endpoint: String,
    pub model: String,
    pub api_key: Option<String>,
    pub max_attempts: u32,
    pub base_backoff: Duration,
    pub request_timeout: Duration,
    /// Upper bound on concurrent in-flight requests.
    pub inflight_limit: usize,
}

impl RemoteConfig {
    pub fn new(endpoint: impl Into<String>, model: impl Into<String>) -> Self {
        Self {
            endpoint: endpoint.into(),
            model: model.into(),
            api_key: None,
            max_attempts: 3,
            base_backoff: Duration::from_millis(250),
            request_timeout: Duration::from_secs(120),
            inflight_limit: 4,
        }
    }

    fn url(&self) -> String {
        if self.endpoint.ends_with("/chat/completions") {
            self.endpoint.clone()
        } else {
            format!("{}/v1/chat/completions", self.endpoint.trim_end_matches('/'))
        }
    }
}

/// Counting semaphore bounding in-flight requests.
struct Semaphore {
    permits: Mutex<usize>,
    cv: Condvar,
}

impl Semaphore {
    fn new(permits: usize) -> Self {
        Self {
            permits: Mutex::new(permits.max(1)),
            cv: Condvar::new(),
        }
    }

    fn acquire(&self) -> SemaphoreGuard<'_> {
        let mut permits = self.permits.lock().unwrap();
        while *permits == 0 {
            permits = self.cv.wait(permits).unwrap();
        }
        *permits -= 1;
        SemaphoreGuard { sem: self }
    }
}

struct SemaphoreGuard<'a> {
    sem: &'a Semaphore,
}

impl Drop for SemaphoreGuard<'_> {
    fn drop(&mut self) {
        *self.sem.permits.lock().unwrap() += 1;
        self.sem.cv.notify_one();
    }
}

pub struct RemoteLm {
    config: RemoteConfig,
    client: reqwest::blocking::Client,
    inflight: Semaphore,
}

impl RemoteLm {
    pub fn new(config: RemoteConfig) -> Result<Self, LmError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(config.request_timeout)
            .build()
            .map_err(|e| LmError::Transport {
                attempts: 0,
                message: e.to_string(),
            })?;
        Ok(Self {
            inflight: Semaphore::new(config.inflight_limit),
            config,
            client,
        })
    }

    fn send_once(&self, body: &serde_json::Value) -> Result<reqwest::blocking::Response, reqwest::Error> {
        let mut req = self.client.post(self.config.url()).json(body);
        if let Some(key) = &self.config.api_key {
            req = req.bearer_auth(key);
        }
        req.send()
    }
}

#[derive(Deserialize)]
struct WireResponse {
    choices: Vec<WireChoice>,
    #[serde(default)]
    usage: Option<WireUsage>,
}

#[derive(Deserialize)]
struct WireChoice {
    message: WireMessage,
}

#[derive(Deserialize)]
struct WireMessage {
    #[serde(default)]
    content: Option<String>,
}

#[derive(Deserialize, Default)]
struct WireUsage {
    #[serde(default)]
    prompt_tokens: u64,
    #[serde(default)]
    completion_tokens: u64,
}

fn transient_status(status: u16) -> bool {
    status == 429 || (500..600).contains(&status)
}

impl LanguageModel for RemoteLm {
    /// One chat-completions call. The request body is identical across
    /// retries; only transient transport failures and 429/5xx statuses
    /// are retried, with exponential backoff.
    fn complete(&self, req: &LmRequest) -> Result<LmResponse, LmError> {
        let _permit = self.inflight.acquire();
        let mut body = json!({
            "model": self.config.model,
            "messages": req.messages.iter().map(|m| json!({
                "role": m.role.as_str(),
                "content": m.content,
            })).collect::<Vec<_>>(),
            "temperature": req.temperature,
            "max_tokens": req.max_tokens,
        });
        if let Some(seed) = req.seed {
            body["seed"] = json!(seed);
        }

        let attempts = self.config.max_attempts.max(1);
        let mut last_failure = String::new();
        for attempt in 0..attempts {
            if attempt > 0 {
                let backoff = self.config.base_backoff * 2u32.pow(attempt - 1);
                std::thread::sleep(backoff);
            }
            match self.send_once(&body) {
                Err(e) => {
                    last_failure = e.to_string();
                    continue;
                }
                Ok(resp) => {
                    let status = resp.status().as_u16();
                    let text = resp.text().unwrap_or_default();
                    if (200..300).contains(&status) {
                        let wire: WireResponse = serde_json::from_str(&text)
                            .map_err(|e| LmError::Payload(e.to_string()))?;
                        let choice = wire
                            .choices
                            .into_iter()
                            .next()
                            .ok_or_else(|| LmError::Payload("no choices in response".into()))?;
                        let usage = wire.usage.unwrap_or_default();
                        return Ok(LmResponse {
                            text: choice.message.content.unwrap_or_default(),
                            usage: TokenUsage {
                                prompt_tokens: usage.prompt_tokens,
                                completion_tokens: usage.completion_tokens,
                            },
                        });
                    }
                    if transient_status(status) && attempt + 1 < attempts {
                        last_failure = format!("status {status}");
                        continue;
                    }
                    return Err(LmError::Protocol {
                        status,
                        body_excerpt: text.chars().take(200).collect(),
                    });
                }
            }
        }
        Err(LmError::Transport {
            attempts,
            message: last_failure,
        })
    }

    fn name(&self) -> &str {
        "remote"
    }
}
