//! Backend calls with an in-flight bound, retries and an on-disk reply cache.

mod cache;
mod http;
mod mock;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::time::{Duration, Instant};

use illusion_core::{Image, PromptSpec};
use serde::{Deserialize, Serialize};

pub use cache::{CacheKey, ReplyCache};
pub use http::HttpBackend;
pub use mock::MockBackend;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BackendConfig {
    pub endpoint_url: String,
    pub model_name: String,
    pub temperature: f64,
    pub max_tokens: u32,
    /// Name of the environment variable holding the API key.
    pub api_key_env: String,
    /// Merged verbatim into the request body.
    pub extra_params: serde_json::Map<String, serde_json::Value>,
    pub max_in_flight: usize,
    pub retry_limit: u32,
    pub timeout_secs: f64,
    /// First retry delay; doubles per attempt.
    pub backoff_ms: u64,
}

impl Default for BackendConfig {
    fn default() -> Self {
        Self {
            endpoint_url: "http://localhost:8000/v1/chat/completions".into(),
            model_name: "mock".into(),
            temperature: 1.0,
            max_tokens: 500,
            api_key_env: "ILLUSION_API_KEY".into(),
            extra_params: serde_json::Map::new(),
            max_in_flight: 8,
            retry_limit: 3,
            timeout_secs: 120.0,
            backoff_ms: 500,
        }
    }
}

impl BackendConfig {
    pub fn validate(&self) -> Result<(), GatewayError> {
        let bad = |m: &str| Err(GatewayError::Config(m.to_string()));
        if self.max_in_flight == 0 {
            return bad("max_in_flight must be at least 1");
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return bad("temperature must be a finite value >= 0");
        }
        if !(self.timeout_secs > 0.0 && self.timeout_secs.is_finite()) {
            return bad("timeout_secs must be positive");
        }
        if self.model_name.is_empty() {
            return bad("model_name must not be empty");
        }
        Ok(())
    }

    pub fn timeout(&self) -> Duration {
        Duration::from_secs_f64(self.timeout_secs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreparedQuery {
    pub sample_id: String,
    pub image: Image,
    pub prompt: PromptSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawReply {
    pub text: String,
    pub latency: Duration,
    /// 1-based attempt that produced the reply; 0 when served from cache.
    pub attempt: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BackendError {
    #[error("transport: {0}")]
    Transport(String),
    #[error("HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("protocol: {0}")]
    Protocol(String),
}

impl BackendError {
    fn retryable(&self) -> bool {
        match self {
            Self::Transport(_) => true,
            Self::Status { status, .. } => *status >= 500 || *status == 429,
            Self::Protocol(_) => false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GatewayError {
    #[error("invalid backend config: {0}")]
    Config(String),
    #[error("gave up after {attempts} attempt(s): {last}")]
    Exhausted { attempts: u32, last: BackendError },
    #[error(transparent)]
    Backend(BackendError),
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
}

/// One chat-completion style model behind a uniform call.
pub trait Backend: Send + Sync {
    fn model_name(&self) -> &str;

    /// Returns the reply text for call `call_index` of `query`.
    fn complete(&self, query: &PreparedQuery, call_index: usize) -> Result<String, BackendError>;
}

struct Slots {
    free: Mutex<usize>,
    cv: Condvar,
}

struct SlotGuard<'a>(&'a Slots);

impl Slots {
    fn acquire(&self) -> SlotGuard<'_> {
        let mut free = self.free.lock().unwrap_or_else(|e| e.into_inner());
        while *free == 0 {
            free = self.cv.wait(free).unwrap_or_else(|e| e.into_inner());
        }
        *free -= 1;
        SlotGuard(self)
    }
}

impl Drop for SlotGuard<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap_or_else(|e| e.into_inner()) += 1;
        self.0.cv.notify_one();
    }
}

/// Shareable front door to a backend. Cache hits bypass the backend and
/// the in-flight bound entirely.
pub struct Gateway {
    backend: Arc<dyn Backend>,
    retry_limit: u32,
    backoff: Duration,
    slots: Slots,
    cache: Option<ReplyCache>,
    backend_calls: AtomicUsize,
}

impl Gateway {
    pub fn new(backend: Arc<dyn Backend>, cfg: &BackendConfig) -> Result<Self, GatewayError> {
        cfg.validate()?;
        Ok(Self {
            backend,
            retry_limit: cfg.retry_limit,
            backoff: Duration::from_millis(cfg.backoff_ms),
            slots: Slots { free: Mutex::new(cfg.max_in_flight), cv: Condvar::new() },
            cache: None,
            backend_calls: AtomicUsize::new(0),
        })
    }

    pub fn with_cache(mut self, cache: ReplyCache) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Number of requests actually handed to the backend, retries included.
    pub fn backend_calls(&self) -> usize {
        self.backend_calls.load(Ordering::SeqCst)
    }

    pub fn model_name(&self) -> &str {
        self.backend.model_name()
    }

    pub fn send(&self, query: &PreparedQuery, call_index: usize) -> Result<RawReply, GatewayError> {
        let key = self.cache.as_ref().map(|_| CacheKey::new(query, call_index, self.backend.model_name()));
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            if let Some(text) = cache.get(key)? {
                return Ok(RawReply { text, latency: Duration::ZERO, attempt: 0 });
            }
        }
        let started = Instant::now();
        let mut attempt = 0;
        let text = loop {
            attempt += 1;
            let result = {
                let _slot = self.slots.acquire();
                self.backend_calls.fetch_add(1, Ordering::SeqCst);
                self.backend.complete(query, call_index)
            };
            match result {
                Ok(text) => break text,
                Err(e) if e.retryable() && attempt <= self.retry_limit => {
                    let delay = self.backoff.saturating_mul(1 << (attempt - 1).min(16));
                    log::warn!(
                        "{} call {call_index} attempt {attempt} failed: {e}; retrying in {delay:?}",
                        query.sample_id
                    );
                    std::thread::sleep(delay);
                }
                Err(e) if e.retryable() => return Err(GatewayError::Exhausted { attempts: attempt, last: e }),
                Err(e) => return Err(GatewayError::Backend(e)),
            }
        };
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            cache.put(key, &text)?;
        }
        Ok(RawReply { text, latency: started.elapsed(), attempt })
    }
}
