//! Writes generated fixtures to disk as PNGs plus a JSONL manifest.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use illusion_core::synth::{generate_suite, FixtureKind, SuiteItem};

use crate::imageio;
use crate::manifest::{Manifest, ManifestRecord};

pub const MANIFEST_FILE: &str = "manifest.jsonl";

/// Generates `counts` fixtures into `dir/images/` and writes
/// `dir/manifest.jsonl` with paths relative to `dir`.
pub fn write_suite(dir: &Path, counts: &[(FixtureKind, usize)], seed: u64) -> io::Result<(Manifest, Vec<SuiteItem>)> {
    let items = generate_suite(counts, seed).map_err(io::Error::other)?;
    let images = dir.join("images");
    fs::create_dir_all(&images)?;
    let mut records = Vec::with_capacity(items.len());
    for item in &items {
        let rel = PathBuf::from("images").join(format!("{}.png", item.id));
        imageio::save_png(&item.fixture.image, &dir.join(&rel)).map_err(io::Error::other)?;
        records.push(ManifestRecord {
            id: item.id.clone(),
            image: rel,
            question: item.fixture.question.clone(),
            label: Some(item.fixture.label),
        });
    }
    let manifest = Manifest { records, base_dir: dir.to_path_buf() };
    let mut buf = Vec::new();
    manifest.write_jsonl(&mut buf)?;
    fs::write(dir.join(MANIFEST_FILE), buf)?;
    Ok((manifest, items))
}
