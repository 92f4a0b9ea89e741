use std::collections::HashMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use illusion::config::{BackendKind, Config};
use illusion::gateway::{Backend, Gateway, HttpBackend, MockBackend, ReplyCache};
use illusion::manifest::{read_predictions, Manifest};
use illusion::pipeline::{dump_debug, evaluate, Runner};
use illusion::{imageio, suite, templates};
use illusion_core::synth::FixtureKind;
use illusion_core::{compare_runs, Label, MetricsReport, PromptTemplates, VoteRecord};

#[derive(Parser)]
#[command(name = "illusion", version, about = "Illusion-aware binary VQA pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the category and sub-type of each question.
    Classify {
        #[arg(long, required_unless_present = "question")]
        manifest: Option<PathBuf>,
        /// Classify this question (repeatable) instead of a manifest.
        #[arg(long)]
        question: Vec<String>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Write each transformed image plus a sidecar with route and prompt.
    Preprocess {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run one sample verbosely.
    Ask {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        question: String,
        #[arg(long, default_value = "ask")]
        id: String,
        /// Ground truth for the mock backend (0 or 1).
        #[arg(long)]
        label: Option<u8>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Full pipeline over a manifest; scores it when labels are present.
    Run {
        #[arg(long)]
        manifest: PathBuf,
        /// Predictions JSONL; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the metrics report JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Score a predictions file against a labeled manifest.
    Eval {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Earlier report to diff against.
        #[arg(long)]
        baseline: Option<PathBuf>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Generate labeled fixtures and their manifest.
    Synth {
        #[arg(long)]
        out: PathBuf,
        /// Fixtures per kind.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Restrict to these kinds (repeatable); all kinds by default.
        #[arg(long, value_parser = parse_kind)]
        kind: Vec<FixtureKind>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the prompt templates as a TOML template file.
    Templates {
        #[arg(long)]
        templates: Option<PathBuf>,
    },
}

/// Options shared by every pipeline command; flags override the config file.
#[derive(Args, Clone, Default)]
struct RunOpts {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    backend: Option<BackendKind>,
    #[arg(long)]
    votes: Option<usize>,
    #[arg(long)]
    templates: Option<PathBuf>,
    /// Mock backend noise seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    debug_images: Option<PathBuf>,
    /// Reply cache directory.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Mock backend flip probability.
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    workers: Option<usize>,
}

impl RunOpts {
    fn config(&self) -> Result<Config> {
        let mut cfg = match &self.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        if let Some(v) = self.backend {
            cfg.backend = v;
        }
        if let Some(v) = self.votes {
            cfg.votes = v;
        }
        if let Some(v) = &self.templates {
            cfg.templates = Some(v.clone());
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.debug_images {
            cfg.debug_images = Some(v.clone());
        }
        if let Some(v) = &self.cache {
            cfg.cache_dir = Some(v.clone());
        }
        if let Some(v) = self.noise {
            cfg.mock.noise = v;
        }
        if let Some(v) = self.workers {
            cfg.workers = Some(v);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_kind(s: &str) -> Result<FixtureKind, String> {
    FixtureKind::ALL
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown kind {s:?}; expected one of {:?}", FixtureKind::ALL.map(|k| k.name())))
}

fn load_templates(cfg: &Config) -> Result<PromptTemplates> {
    Ok(match &cfg.templates {
        Some(p) => templates::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => PromptTemplates::builtin(),
    })
}

fn gateway(cfg: &Config, labels: HashMap<String, Label>) -> Result<Gateway> {
    let backend: Arc<dyn Backend> = match cfg.backend {
        BackendKind::Mock => Arc::new(MockBackend::new(labels, cfg.mock.noise, cfg.seed)?),
        BackendKind::Http => Arc::new(HttpBackend::new(cfg.http.clone())),
    };
    let mut http = cfg.http.clone();
    if cfg.backend == BackendKind::Mock {
        http.model_name = backend.model_name().to_string();
    }
    let mut g = Gateway::new(backend, &http)?;
    if let Some(dir) = &cfg.cache_dir {
        g = g.with_cache(ReplyCache::open(dir).with_context(|| format!("opening cache {}", dir.display()))?);
    }
    Ok(g)
}

fn manifest_labels(m: &Manifest) -> HashMap<String, Label> {
    m.records.iter().filter_map(|r| Some((r.id.clone(), r.label?))).collect()
}

fn write_report(report: &MetricsReport, path: Option<&Path>) -> Result<()> {
    print!("{}", report.summary_table());
    if let Some(p) = path {
        fs::write(p, serde_json::to_string_pretty(report)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    match cli.command {
        Command::Classify { manifest, question, opts } => {
            let rules = opts.config()?.keyword_rules()?;
            let mut out = stdout.lock();
            let items: Vec<(Option<String>, String)> = match manifest {
                Some(p) => Manifest::load(&p)?.records.into_iter().map(|r| (Some(r.id), r.question)).collect(),
                None => question.into_iter().map(|q| (None, q)).collect(),
            };
            for (id, q) in items {
                let a = rules.classify(&q);
                let line = serde_json::json!({
                    "id": id,
                    "question": q,
                    "category": a.category,
                    "subtype": a.subtype,
                    "matched_keyword": a.matched_keyword,
                });
                writeln!(out, "{line}")?;
            }
        }
        Command::Preprocess { manifest, out, opts } => {
            let cfg = opts.config()?;
            let runner = Runner::from_config(&cfg, load_templates(&cfg)?)?;
            let m = Manifest::load(&manifest)?;
            let mut failed = 0;
            for rec in &m.records {
                let result = imageio::load(&m.image_path(rec))
                    .map_err(anyhow::Error::from)
                    .and_then(|img| Ok(runner.prepare(&rec.question, &img)?))
                    .and_then(|p| Ok(dump_debug(&out, &rec.id, &p)?));
                if let Err(e) = result {
                    log::error!("{}: {e:#}", rec.id);
                    failed += 1;
                }
            }
            eprintln!("{} of {} samples written to {}", m.records.len() - failed, m.records.len(), out.display());
        }
        Command::Ask { image, question, id, label, opts } => {
            let cfg = opts.config()?;
            let runner = Runner::from_config(&cfg, load_templates(&cfg)?)?;
            let label = label.map(|l| Label::from_u8(l).context("--label must be 0 or 1")).transpose()?;
            let g = gateway(&cfg, label.map(|l| (id.clone(), l)).into_iter().collect())?;
            let img = imageio::load(&image)?;
            let prepared = runner.prepare(&question, &img)?;
            let a = &prepared.assignment;
            println!("category: {} / {} (keyword {:?})", a.category, a.subtype.name(), a.matched_keyword);
            for step in &prepared.output.applied_steps {
                println!("step: {step}");
            }
            println!("fallback_used: {}", prepared.output.fallback_used);
            println!("--- prompt ---\n{}\n--------------", prepared.prompt.text);
            if let Some(dir) = &runner.debug_dir {
                dump_debug(dir, &id, &prepared)?;
            }
            let outcomes = runner.ask(&g, &id, &prepared);
            for (i, o) in outcomes.iter().enumerate() {
                match &o.reply {
                    Ok(r) => println!(
                        "call {i}: {:?} -> {} (attempt {}, {:?})",
                        r.text,
                        o.answer.as_i8(),
                        r.attempt,
                        r.latency
                    ),
                    Err(e) => println!("call {i}: error: {e}"),
                }
            }
            let vote = VoteRecord::tally(&id, outcomes.iter().map(|o| o.answer).collect(), runner.tie_break);
            println!("final: {}", vote.final_answer.as_i8());
        }
        Command::Run { manifest, out, report, opts } => {
            let cfg = opts.config()?;
            let runner = Runner::from_config(&cfg, load_templates(&cfg)?)?;
            let m = Manifest::load(&manifest)?;
            if cfg.backend == BackendKind::Mock && !m.is_labeled() {
                log::warn!("mock backend answers only labeled samples; unlabeled ones will vote -1");
            }
            let g = gateway(&cfg, manifest_labels(&m))?;
            let preds = match &out {
                Some(p) => {
                    let mut w =
                        BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?);
                    runner.run(&m, &g, &mut w)?
                }
                None => runner.run(&m, &g, &mut stdout.lock())?,
            };
            log::info!("{} backend calls", g.backend_calls());
            if m.records.iter().any(|r| r.label.is_some()) {
                let metrics = evaluate(&m, &preds, &runner.rules)?;
                if out.is_some() {
                    write_report(&metrics, report.as_deref())?;
                } else {
                    eprint!("{}", metrics.summary_table());
                }
            }
        }
        Command::Eval { manifest, predictions, report, baseline, opts } => {
            let rules = opts.config()?.keyword_rules()?;
            let m = Manifest::load(&manifest)?;
            let preds = read_predictions(&predictions)?;
            let metrics = evaluate(&m, &preds, &rules)?;
            write_report(&metrics, report.as_deref())?;
            if let Some(b) = baseline {
                let base: MetricsReport = serde_json::from_str(&fs::read_to_string(&b)?)?;
                let delta = compare_runs(&base, &metrics)?;
                println!("{}", serde_json::to_string_pretty(&delta)?);
            }
        }
        Command::Synth { out, count, kind, seed } => {
            let kinds = if kind.is_empty() { FixtureKind::ALL.to_vec() } else { kind };
            let counts: Vec<_> = kinds.into_iter().map(|k| (k, count)).collect();
            let (m, _) = suite::write_suite(&out, &counts, seed)?;
            eprintln!("{} fixtures written to {}", m.records.len(), out.join(suite::MANIFEST_FILE).display());
        }
        Command::Templates { templates: path } => {
            let t = match path {
                Some(p) => templates::load(&p)?,
                None => PromptTemplates::builtin(),
            };
            print!("{}", templates::to_toml(&t));
        }
    }
    Ok(())
}
