use base64::Engine;
use serde_json::{json, Value};

use super::{Backend, BackendConfig, BackendError, PreparedQuery};
use crate::imageio::encode_png;

/// Chat-completion endpoint speaking the common `messages` JSON shape.
///
/// Request: `{"model", "temperature", "max_tokens", "messages": [{"role":
/// "user", "content": [{"type": "text", "text"}, {"type": "image_url",
/// "image_url": {"url": "data:image/png;base64,..."}}]}]}` plus every entry
/// of `extra_params` at the top level. Reply text is read from
/// `choices[0].message.content`, either a string or a list of text parts.
pub struct HttpBackend {
    cfg: BackendConfig,
    api_key: Option<String>,
    agent: ureq::Agent,
}

impl HttpBackend {
    /// Reads the API key from the environment variable named in `cfg`; a
    /// missing variable means no `Authorization` header.
    pub fn new(cfg: BackendConfig) -> Self {
        let api_key = std::env::var(&cfg.api_key_env).ok().filter(|k| !k.is_empty());
        let config =
            ureq::Agent::config_builder().timeout_global(Some(cfg.timeout())).http_status_as_error(false).build();
        Self { agent: ureq::Agent::new_with_config(config), api_key, cfg }
    }

    pub fn request_body(&self, query: &PreparedQuery) -> Result<Value, BackendError> {
        request_body(&self.cfg, query)
    }
}

pub(crate) fn request_body(cfg: &BackendConfig, query: &PreparedQuery) -> Result<Value, BackendError> {
    let png = encode_png(&query.image).map_err(|e| BackendError::Protocol(e.to_string()))?;
    let url = format!("data:image/png;base64,{}", base64::engine::general_purpose::STANDARD.encode(png));
    let mut body = json!({
        "model": cfg.model_name,
        "temperature": cfg.temperature,
        "max_tokens": cfg.max_tokens,
        "messages": [{
            "role": "user",
            "content": [
                {"type": "text", "text": query.prompt.text},
                {"type": "image_url", "image_url": {"url": url}},
            ],
        }],
    });
    let obj = body.as_object_mut().expect("literal object");
    for (k, v) in &cfg.extra_params {
        obj.insert(k.clone(), v.clone());
    }
    Ok(body)
}

pub(crate) fn reply_text(body: &Value) -> Result<String, BackendError> {
    let content = body
        .pointer("/choices/0/message/content")
        .ok_or_else(|| BackendError::Protocol("response has no choices[0].message.content".into()))?;
    match content {
        Value::String(s) => Ok(s.clone()),
        Value::Array(parts) => {
            let text: Vec<&str> = parts.iter().filter_map(|p| p.get("text").and_then(Value::as_str)).collect();
            if text.is_empty() {
                Err(BackendError::Protocol("content parts carry no text".into()))
            } else {
                Ok(text.join(""))
            }
        }
        Value::Null => Ok(String::new()),
        other => Err(BackendError::Protocol(format!("unexpected content type: {other}"))),
    }
}

impl Backend for HttpBackend {
    fn model_name(&self) -> &str {
        &self.cfg.model_name
    }

    fn complete(&self, query: &PreparedQuery, _call_index: usize) -> Result<String, BackendError> {
        let body = self.request_body(query)?;
        let mut req = self.agent.post(&self.cfg.endpoint_url).header("Content-Type", "application/json");
        if let Some(key) = &self.api_key {
            req = req.header("Authorization", format!("Bearer {key}"));
        }
        let mut resp = req.send_json(&body).map_err(|e| BackendError::Transport(e.to_string()))?;
        let status = resp.status().as_u16();
        let text = resp.body_mut().read_to_string().map_err(|e| BackendError::Transport(e.to_string()))?;
        if !(200..300).contains(&status) {
            return Err(BackendError::Status { status, body: text.chars().take(500).collect() });
        }
        let json: Value =
            serde_json::from_str(&text).map_err(|e| BackendError::Protocol(format!("bad JSON body: {e}")))?;
        reply_text(&json)
    }
}
