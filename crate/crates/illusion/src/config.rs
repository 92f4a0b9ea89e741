//! Run configuration file (TOML).
//!
//! ```toml
//! backend = "http"          # or "mock"
//! votes = 5
//! tie_break = 1
//! seed = 0
//! cache_dir = "cache"       # relative paths resolve against this file
//! templates = "prompts.toml"
//!
//! [http]
//! endpoint_url = "https://api.example.com/v1/chat/completions"
//! model_name = "some-vlm"
//! api_key_env = "ILLUSION_API_KEY"
//! max_in_flight = 24
//! extra_params = { top_p = 0.9 }
//!
//! [mock]
//! noise = 0.0
//!
//! [preprocess]
//! grid_spacing = 40
//!
//! [classifier.keywords]
//! size = ["size", "larger"]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use illusion_core::{IllusionCategory, KeywordRules, Label, PreprocessParams};
use serde::{Deserialize, Serialize};

use crate::gateway::BackendConfig;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Http,
    #[default]
    Mock,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MockConfig {
    /// Per-call probability of flipping the oracle answer.
    pub noise: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    /// Replaces the keyword list of each listed category.
    pub keywords: BTreeMap<IllusionCategory, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub backend: BackendKind,
    pub votes: usize,
    pub tie_break: Label,
    /// Defaults to `min(max_in_flight, available CPUs)`.
    pub workers: Option<usize>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub templates: Option<PathBuf>,
    pub debug_images: Option<PathBuf>,
    pub http: BackendConfig,
    pub mock: MockConfig,
    pub preprocess: PreprocessParams,
    pub classifier: ClassifierConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            backend: BackendKind::Mock,
            votes: 5,
            tie_break: Label::Yes,
            workers: None,
            seed: 0,
            cache_dir: None,
            templates: None,
            debug_images: None,
            http: BackendConfig::default(),
            mock: MockConfig::default(),
            preprocess: PreprocessParams::default(),
            classifier: ClassifierConfig::default(),
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    /// Parses the file and resolves its relative paths against its directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.cache_dir, &mut cfg.templates, &mut cfg.debug_images].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.votes == 0 {
            return Err(ConfigError::Invalid("votes must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(ConfigError::Invalid("workers must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.mock.noise) {
            return Err(ConfigError::Invalid("mock.noise must lie in [0, 1]".into()));
        }
        self.http.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.keyword_rules()?;
        Ok(())
    }

    pub fn keyword_rules(&self) -> Result<KeywordRules, ConfigError> {
        let mut rules = KeywordRules::default();
        for (cat, words) in &self.classifier.keywords {
            rules = rules.with_keywords(*cat, words.clone()).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        Ok(rules)
    }

    pub fn worker_count(&self) -> usize {
        self.workers.unwrap_or_else(|| {
            let cpus = std::thread::available_parallelism().map_or(1, usize::from);
            cpus.min(self.http.max_in_flight).max(1)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use illusion_core::classify;

    #[test]
    fn defaults() {
        let c = Config::parse("").unwrap();
        assert_eq!(c, Config::default());
        assert_eq!((c.votes, c.tie_break, c.http.max_tokens, c.http.temperature), (5, Label::Yes, 500, 1.0));
        assert!(c.validate().is_ok());
        assert!(c.worker_count() >= 1);
    }

    #[test]
    fn full_file() {
        let text = r#"
backend = "http"
votes = 3
tie_break = 0
cache_dir = "c"

[http]
endpoint_url = "http://x/v1/chat/completions"
model_name = "m"
max_in_flight = 2
extra_params = { top_p = 0.9, thinking = { type = "enabled" } }

[preprocess]
grid_spacing = 40

[classifier.keywords]
size = ["size", "larger"]
"#;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, text).unwrap();
        let c = Config::load(&path).unwrap();
        assert_eq!(c.backend, BackendKind::Http);
        assert_eq!(c.tie_break, Label::No);
        assert_eq!(c.cache_dir, Some(dir.path().join("c")));
        assert_eq!(c.http.extra_params["thinking"]["type"], "enabled");
        assert_eq!(c.preprocess.grid_spacing, 40);
        assert_eq!(c.preprocess.blend_alpha, 0.5);
        let rules = c.keyword_rules().unwrap();
        assert_eq!(rules.classify("Is the left one larger?").category, IllusionCategory::Size);
        assert_eq!(classify("Is the left one larger?").category, IllusionCategory::Comprehensive);
        assert_eq!(c.worker_count(), c.worker_count().min(2));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::parse("votes = 0").unwrap().validate().is_err());
        assert!(Config::parse("[mock]\nnoise = 2.0").unwrap().validate().is_err());
        assert!(Config::parse("unknown_key = 1").is_err());
        assert!(Config::parse("[classifier.keywords]\ncomprehensive = [\"x\"]").unwrap().validate().is_err());
    }
}
