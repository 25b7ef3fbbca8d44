//! LM gateway: one abstraction for every language-model call, with a
//! remote OpenAI-compatible backend and a deterministic scripted double.
//! Nothing else in the workspace touches the network.

mod error;
mod estimate;
mod gateway;
mod remote;
mod request;
mod scripted;

pub use error::LmError;
pub use estimate::{estimate_tokens, TokenEstimator, DEFAULT_CHARS_PER_TOKEN};
pub use gateway::{CallRecord, GatewayStats, LmGateway};
pub use remote::{RemoteConfig, RemoteLm};
pub use request::{ChatMessage, LmRequest, LmResponse, Role, TokenUsage};
pub use scripted::{Matcher, Reply, ScriptedLm};

/// A backend that can serve one chat completion.
pub trait LanguageModel: Send + Sync {
    fn complete(&self, req: &LmRequest) -> Result<LmResponse, LmError>;

    fn name(&self) -> &str {
        "lm"
    }
}
