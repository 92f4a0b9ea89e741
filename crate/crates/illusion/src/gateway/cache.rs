use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::PreparedQuery;
use crate::sha256_hex;

/// Identity of one backend call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheKey {
    pub sample_id: String,
    pub call_index: usize,
    pub model: String,
    /// SHA-256 over the prompt text and the image sent with it.
    pub prompt_hash: String,
}

impl CacheKey {
    pub fn new(query: &PreparedQuery, call_index: usize, model: &str) -> Self {
        let mut buf = Vec::with_capacity(query.prompt.text.len() + query.image.as_raw().len() + 32);
        buf.extend_from_slice(query.prompt.text.as_bytes());
        buf.push(0);
        buf.extend_from_slice(format!("{}x{}", query.image.width(), query.image.height()).as_bytes());
        buf.push(0);
        buf.extend_from_slice(query.image.as_raw());
        Self { sample_id: query.sample_id.clone(), call_index, model: model.to_string(), prompt_hash: sha256_hex(&buf) }
    }

    fn header(&self) -> String {
        format!(
            "sample_id: {}\ncall_index: {}\nmodel: {}\nprompt_sha256: {}\n\n",
            self.sample_id, self.call_index, self.model, self.prompt_hash
        )
    }

    fn file_name(&self) -> String {
        let header = self.header();
        format!("{}.txt", &sha256_hex(header.as_bytes())[..40])
    }
}

/// One file per call: a metadata header, a blank line, then the raw reply.
pub struct ReplyCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

impl ReplyCache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir, write_lock: Mutex::new(()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn get(&self, key: &CacheKey) -> io::Result<Option<String>> {
        let path = self.dir.join(key.file_name());
        let content = match fs::read_to_string(&path) {
            Ok(c) => c,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(content.strip_prefix(&key.header()).map(str::to_string))
    }

    /// Writes through a temporary file and a rename, so readers never see a partial entry.
    pub fn put(&self, key: &CacheKey, reply: &str) -> io::Result<()> {
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let path = self.dir.join(key.file_name());
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(key.header().as_bytes())?;
        f.write_all(reply.as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::tests::query;

    #[test]
    fn round_trip_and_key_sensitivity() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ReplyCache::open(dir.path()).unwrap();
        let q = query("s1");
        let k0 = CacheKey::new(&q, 0, "m");
        assert_eq!(cache.get(&k0).unwrap(), None);
        cache.put(&k0, "The answer is 1\n\nreally").unwrap();
        assert_eq!(cache.get(&k0).unwrap().as_deref(), Some("The answer is 1\n\nreally"));

        assert_eq!(cache.get(&CacheKey::new(&q, 1, "m")).unwrap(), None);
        assert_eq!(cache.get(&CacheKey::new(&q, 0, "other")).unwrap(), None);
        let mut q2 = q.clone();
        q2.prompt.text.push('!');
        assert_eq!(cache.get(&CacheKey::new(&q2, 0, "m")).unwrap(), None);

        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        let text = fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
        assert!(text.starts_with("sample_id: s1\ncall_index: 0\nmodel: m\n"));
    }
}
