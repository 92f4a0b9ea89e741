//! JSONL manifests (inputs) and prediction files (outputs).

use std::collections::HashSet;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use illusion_core::{Answer, IllusionCategory, Label, SubType};
use serde::{Deserialize, Serialize};

use crate::sha256_hex;

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("line {0}: empty id")]
    EmptyId(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub id: String,
    /// Relative paths are resolved against the manifest's directory.
    pub image: PathBuf,
    pub question: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Manifest {
    pub records: Vec<ManifestRecord>,
    pub base_dir: PathBuf,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        let text = fs::read_to_string(path)
            .map_err(|source| ManifestError::Io { path: path.display().to_string(), source })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, base)
    }

    /// One JSON object per non-blank line; ids must be unique.
    pub fn parse(text: &str, base_dir: PathBuf) -> Result<Self, ManifestError> {
        let mut records = Vec::new();
        let mut seen = HashSet::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: ManifestRecord =
                serde_json::from_str(line).map_err(|source| ManifestError::Json { line: i + 1, source })?;
            if rec.id.is_empty() {
                return Err(ManifestError::EmptyId(i + 1));
            }
            if !seen.insert(rec.id.clone()) {
                return Err(ManifestError::DuplicateId(rec.id));
            }
            records.push(rec);
        }
        Ok(Self { records, base_dir })
    }

    pub fn image_path(&self, rec: &ManifestRecord) -> PathBuf {
        if rec.image.is_absolute() {
            rec.image.clone()
        } else {
            self.base_dir.join(&rec.image)
        }
    }

    pub fn is_labeled(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.label.is_some())
    }

    pub fn write_jsonl(&self, out: &mut impl Write) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut *out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Identity of the labeled dataset: ids, questions, labels and image
    /// contents, in manifest order.
    pub fn dataset_hash(&self) -> String {
        let mut acc = String::new();
        for r in &self.records {
            let image = fs::read(self.image_path(r)).map(|b| sha256_hex(&b)).unwrap_or_else(|_| "missing".into());
            let label = r.label.map_or("-".to_string(), |l| l.as_u8().to_string());
            acc.push_str(&format!("{}\t{}\t{}\t{}\n", r.id, r.question, label, image));
        }
        sha256_hex(acc.as_bytes())
    }
}

/// One output line of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: String,
    pub category: IllusionCategory,
    pub subtype: SubType,
    pub votes: Vec<Answer>,
    #[serde(rename = "final")]
    pub final_answer: Answer,
    pub fallback_used: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn write_prediction(out: &mut (impl Write + ?Sized), rec: &PredictionRecord) -> io::Result<()> {
    serde_json::to_writer(&mut *out, rec)?;
    out.write_all(b"\n")
}

pub fn read_predictions(path: &Path) -> Result<Vec<PredictionRecord>, ManifestError> {
    let file = fs::File::open(path).map_err(|source| ManifestError::Io { path: path.display().to_string(), source })?;
    let mut out = Vec::new();
    for (i, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| ManifestError::Io { path: path.display().to_string(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| ManifestError::Json { line: i + 1, source })?);
    }
    Ok(out)
}
