//! Content-addressed on-disk cache of serialized results.
//!
//! An entry `<key>.json` holds the SHA-256 of the value on its first line and the value
//! bytes after it. Writes go to a temporary file in the same directory and are renamed
//! into place, so readers never observe a partial entry.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache entry {key} is corrupt: {reason}")]
    CacheCorrupt { key: String, reason: String },
    #[error("cache i/o error: {0}")]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of length-prefixed parts, so that no two part lists collide by concatenation.
pub fn key_of(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss, `CacheCorrupt` when the stored digest does not match.
    pub fn get(&self, key: &str) -> Result<Option<String>, CacheError> {
        let bytes = match fs::read(self.entry_path(key)) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: &str| CacheError::CacheCorrupt {
            key: key.to_string(),
            reason: reason.to_string(),
        };
        let split = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| corrupt("missing digest line"))?;
        let (digest, value) = (&bytes[..split], &bytes[split + 1..]);
        if digest != sha256_hex(value).as_bytes() {
            return Err(corrupt("digest mismatch"));
        }
        String::from_utf8(value.to_vec())
            .map(Some)
            .map_err(|_| corrupt("value is not UTF-8"))
    }

    pub fn put(&self, key: &str, value: &str) -> Result<(), CacheError> {
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(sha256_hex(value.as_bytes()).as_bytes())?;
            f.write_all(b"\n")?;
            f.write_all(value.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.entry_path(key))?;
        Ok(())
    }
}
