//! classify → preprocess → prompt → N backend calls → vote, over a manifest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use illusion_core::preprocess::preprocess_with;
use illusion_core::{
    compute_metrics, parse_answer, Answer, CategoryAssignment, Image, KeywordRules, Label, MetricsReport,
    PreprocessOutput, PreprocessParams, PromptSpec, PromptTemplates, VoteRecord,
};

use crate::config::Config;
use crate::gateway::{Gateway, PreparedQuery, RawReply};
use crate::imageio;
use crate::manifest::{write_prediction, Manifest, ManifestRecord, PredictionRecord};

/// Everything needed to turn one sample into a prediction.
#[derive(Debug, Clone)]
pub struct Runner {
    pub rules: KeywordRules,
    pub params: PreprocessParams,
    pub templates: PromptTemplates,
    pub votes: usize,
    pub tie_break: Label,
    pub workers: usize,
    pub debug_dir: Option<PathBuf>,
}

impl Default for Runner {
    fn default() -> Self {
        Self {
            rules: KeywordRules::default(),
            params: PreprocessParams::default(),
            templates: PromptTemplates::builtin(),
            votes: 5,
            tie_break: Label::Yes,
            workers: 1,
            debug_dir: None,
        }
    }
}

/// A sample after classification, preprocessing and prompt construction.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub assignment: CategoryAssignment,
    pub output: PreprocessOutput,
    pub prompt: PromptSpec,
}

/// Result of one backend call as seen by the voter.
#[derive(Debug, Clone)]
pub struct CallOutcome {
    pub reply: Result<RawReply, String>,
    pub answer: Answer,
}

impl Runner {
    pub fn from_config(cfg: &Config, templates: PromptTemplates) -> Result<Self, crate::config::ConfigError> {
        cfg.validate()?;
        Ok(Self {
            rules: cfg.keyword_rules()?,
            params: cfg.preprocess.clone(),
            templates,
            votes: cfg.votes,
            tie_break: cfg.tie_break,
            workers: cfg.worker_count(),
            debug_dir: cfg.debug_images.clone(),
        })
    }

    pub fn prepare(&self, question: &str, image: &Image) -> Result<Prepared, illusion_core::Error> {
        let assignment = self.rules.classify(question);
        let output = preprocess_with(&self.params, assignment.category, assignment.subtype, image)?;
        let prompt = self.templates.build(&assignment, &output, question);
        Ok(Prepared { assignment, output, prompt })
    }

    /// Issues the configured number of calls for an already prepared sample.
    pub fn ask(&self, gateway: &Gateway, sample_id: &str, prepared: &Prepared) -> Vec<CallOutcome> {
        let query = PreparedQuery {
            sample_id: sample_id.to_string(),
            image: prepared.output.image.clone(),
            prompt: prepared.prompt.clone(),
        };
        (0..self.votes)
            .map(|i| match gateway.send(&query, i) {
                Ok(reply) => {
                    let answer = parse_answer(&reply.text, &prepared.prompt.answer_map);
                    CallOutcome { reply: Ok(reply), answer }
                }
                Err(e) => {
                    log::warn!("{sample_id} call {i}: {e}");
                    CallOutcome { reply: Err(e.to_string()), answer: Answer::Invalid }
                }
            })
            .collect()
    }

    /// Never fails: an unreadable image or a failed route yields a record
    /// with all votes -1 and an error note.
    pub fn process(&self, manifest: &Manifest, rec: &ManifestRecord, gateway: &Gateway) -> PredictionRecord {
        let assignment = self.rules.classify(&rec.question);
        let failed = |error: String| PredictionRecord {
            id: rec.id.clone(),
            category: assignment.category,
            subtype: assignment.subtype,
            votes: vec![Answer::Invalid; self.votes],
            final_answer: Answer::Invalid,
            fallback_used: false,
            error: Some(error),
        };
        let image = match imageio::load(&manifest.image_path(rec)) {
            Ok(img) => img,
            Err(e) => return failed(e.to_string()),
        };
        let prepared = match self.prepare(&rec.question, &image) {
            Ok(p) => p,
            Err(e) => return failed(format!("preprocessing: {e}")),
        };
        if let Some(dir) = &self.debug_dir {
            if let Err(e) = dump_debug(dir, &rec.id, &prepared) {
                log::warn!("{}: debug image not written: {e}", rec.id);
            }
        }
        let outcomes = self.ask(gateway, &rec.id, &prepared);
        let errors: Vec<String> = outcomes
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.reply.as_ref().err().map(|e| format!("call {i}: {e}")))
            .collect();
        let vote = VoteRecord::tally(&rec.id, outcomes.iter().map(|o| o.answer).collect(), self.tie_break);
        PredictionRecord {
            id: rec.id.clone(),
            category: prepared.assignment.category,
            subtype: prepared.assignment.subtype,
            votes: vote.votes,
            final_answer: vote.final_answer,
            fallback_used: prepared.output.fallback_used,
            error: (!errors.is_empty()).then(|| errors.join("; ")),
        }
    }

    /// Processes every record on a worker pool and writes predictions to
    /// `out` in manifest order as soon as each prefix is complete.
    pub fn run(
        &self,
        manifest: &Manifest,
        gateway: &Gateway,
        out: &mut dyn Write,
    ) -> io::Result<Vec<PredictionRecord>> {
        let n = manifest.records.len();
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel::<(usize, PredictionRecord)>();
        let mut done = Vec::with_capacity(n);
        std::thread::scope(|scope| -> io::Result<()> {
            for _ in 0..self.workers.clamp(1, n.max(1)) {
                let tx = tx.clone();
                let next = &next;
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= n {
                        break;
                    }
                    let rec = self.process(manifest, &manifest.records[i], gateway);
                    if tx.send((i, rec)).is_err() {
                        break;
                    }
                });
            }
            drop(tx);
            let mut pending = BTreeMap::new();
            for (i, rec) in rx {
                pending.insert(i, rec);
                while let Some(rec) = pending.remove(&done.len()) {
                    write_prediction(out, &rec)?;
                    done.push(rec);
                }
            }
            out.flush()
        })?;
        Ok(done)
    }
}

fn safe_file_stem(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' }).collect()
}

/// Writes the transformed image and a text sidecar describing the route.
pub fn dump_debug(dir: &Path, id: &str, prepared: &Prepared) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let stem = safe_file_stem(id);
    imageio::save_png(&prepared.output.image, &dir.join(format!("{stem}.png"))).map_err(io::Error::other)?;
    let mut s = String::new();
    let a = &prepared.assignment;
    let _ = writeln!(s, "id: {id}");
    let _ = writeln!(s, "category: {}", a.category);
    let _ = writeln!(s, "subtype: {}", a.subtype.name());
    let _ = writeln!(s, "matched_keyword: {}", a.matched_keyword);
    let _ = writeln!(s, "fallback_used: {}", prepared.output.fallback_used);
    for step in &prepared.output.applied_steps {
        let _ = writeln!(s, "step: {step}");
    }
    let _ = writeln!(s, "\n{}", prepared.prompt.text);
    std::fs::write(dir.join(format!("{stem}.txt")), s)
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("manifest has no labeled records")]
    NoLabels,
}

/// Scores predictions against the labeled records of `manifest`. A labeled
/// record without a prediction counts as -1 under its classified category;
/// unlabeled records and unknown prediction ids are ignored.
pub fn evaluate(
    manifest: &Manifest,
    predictions: &[PredictionRecord],
    rules: &KeywordRules,
) -> Result<MetricsReport, EvalError> {
    let by_id: BTreeMap<&str, &PredictionRecord> = predictions.iter().map(|p| (p.id.as_str(), p)).collect();
    let mut triples = Vec::new();
    for rec in &manifest.records {
        let Some(label) = rec.label else { continue };
        match by_id.get(rec.id.as_str()) {
            Some(p) => triples.push((p.final_answer, label, p.category)),
            None => {
                log::warn!("{}: no prediction", rec.id);
                triples.push((Answer::Invalid, label, rules.classify(&rec.question).category));
            }
        }
    }
    if triples.is_empty() {
        return Err(EvalError::NoLabels);
    }
    Ok(compute_metrics(&triples).with_dataset_hash(manifest.dataset_hash()))
}
