use thiserror::Error;

#[derive(Debug, Error)]
pub enum LmError {
    #[error("request estimated at {estimated} tokens exceeds budget of {budget}")]
    Budget { estimated: usize, budget: usize },

    #[error("endpoint unreachable after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },

    #[error("endpoint returned status {status}: {body_excerpt}")]
    Protocol { status: u16, body_excerpt: String },

    #[error("malformed completion payload: {0}")]
    Payload(String),
}
