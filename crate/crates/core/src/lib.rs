//! Allocation-only core of the illusion-aware binary VQA pipeline.
//!
//! Everything here is pure: question routing, raster transforms, the
//! per-type preprocessing routes, prompt templates, answer parsing, vote
//! aggregation, balanced-accuracy metrics and the procedural fixture
//! generator. IO, networking and the CLI live in the `illusion` crate.

#![no_std]

extern crate alloc;

pub mod answer;
pub mod classifier;
pub mod ensemble;
mod error;
pub mod image;
pub mod image_ops;
pub mod metrics;
pub mod preprocess;
pub mod prompt;
pub mod synth;

pub use answer::{parse_answer, Answer, AnswerMap, Label};
pub use classifier::{classify, classify_subtype, CategoryAssignment, IllusionCategory, KeywordRules, SubType};
pub use ensemble::{majority_vote, VoteRecord};
pub use error::Error;
pub use image::{BinaryMask, Image, Rgb};
pub use metrics::{compare_runs, compute_metrics, ClassMetrics, MetricsDelta, MetricsReport};
pub use preprocess::{preprocess, PreprocessOutput, PreprocessParams, Step};
pub use prompt::{build_prompt, PromptSpec, PromptTemplates, TemplateKey};

pub type Result<T, E = Error> = core::result::Result<T, E>;
