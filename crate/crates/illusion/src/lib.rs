//! File formats, backends and the batch runner around `illusion-core`.

pub mod config;
pub mod gateway;
pub mod imageio;
pub mod manifest;
pub mod pipeline;
pub mod suite;
pub mod templates;

pub use illusion_core as core;

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}
