//! Persistent reduced-GB cache: one JSON file per entry under
//! `<workspace>/gbcache/<hash>.json`.
//!
//! The key is a content hash of (format version, p, variables, order
//! name, canonical sorted generator text), so any change to the input
//! ideal, the order, or the file format is a miss. Writes go through a
//! temp file and a rename, so concurrent processes sharing a workspace
//! never observe a torn entry. A corrupt entry is reported on stderr and
//! treated as a miss.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub p: u64,
    pub vars: Vec<String>,
    pub order: String,
    /// Canonical generator text, sorted; part of the key.
    pub gens: Vec<String>,
    /// Canonical reduced-GB text in basis order.
    pub gb: Vec<String>,
    pub created_at: u64,
}

#[derive(Debug, Clone)]
pub struct GbCache {
    dir: PathBuf,
}

/// Content hash of the entry key; `gens` must already be canonical text.
pub fn entry_key(p: u64, vars: &[String], order: &str, gens: &[String]) -> String {
    let mut sorted = gens.to_vec();
    sorted.sort();
    let mut h = Sha256::new();
    h.update(FORMAT_VERSION.to_le_bytes());
    h.update(p.to_le_bytes());
    for v in vars {
        h.update(v.as_bytes());
        h.update([0u8]);
    }
    h.update(order.as_bytes());
    h.update([0u8]);
    for g in &sorted {
        h.update(g.as_bytes());
        h.update([0u8]);
    }
    let digest = h.finalize();
    digest.iter().map(|b| format!("{:02x}", b)).collect()
}

impl GbCache {
    pub fn open(workspace: &Path) -> std::io::Result<GbCache> {
        let dir = workspace.join("gbcache");
        fs::create_dir_all(&dir)?;
        Ok(GbCache { dir })
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }

    /// Returns the entry for `key`, or None on miss. Corrupt or
    /// version-mismatched entries are misses; corruption is reported
    /// through `warn`.
    pub fn get(&self, key: &str, warn: &mut dyn FnMut(&str)) -> Option<CacheEntry> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(_) => return None,
        };
        match serde_json::from_slice::<CacheEntry>(&bytes) {
            Ok(entry) if entry.version == FORMAT_VERSION => Some(entry),
            Ok(_) => None,
            Err(e) => {
                warn(&format!(
                    "ignoring corrupt cache entry {}: {}",
                    path.display(),
                    e
                ));
                None
            }
        }
    }

    /// Atomic write: temp file in the same directory, then rename.
    pub fn put(&self, key: &str, entry: &CacheEntry) -> std::io::Result<()> {
        let path = self.path_for(key);
        let tmp = self
            .dir
            .join(format!("{}.tmp{}", key, std::process::id()));
        let bytes = serde_json::to_vec(entry).expect("cache entry serializes");
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, &path)
    }
}

pub fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
