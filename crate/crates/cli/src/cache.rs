//! Append-only result cache for expensive exact computations.
//!
//! The cache lives under the directory named by `RAINBOW_CACHE_DIR` and is
//! disabled when that variable is unset. It is a single line-delimited JSON
//! file; writes append under an advisory file lock, concurrent readers are
//! safe, and the last entry for a key wins. Lines that fail to parse are
//! ignored, so a corrupted cache degrades to recomputation, never to a
//! wrong answer. Cached values are the structured result records
//! themselves: a hit reproduces byte-identical `RESULT` output.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::os::unix::io::AsRawFd;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub op: String,
    pub value: serde_json::Value,
    pub tool_version: String,
    pub created_unix: u64,
}

pub struct Cache {
    dir: PathBuf,
}

/// Canonical cache key: hash of the operation, its parameters, and the
/// format version.
pub fn cache_key(op: &str, parts: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(FORMAT_VERSION.as_bytes());
    h.update(b"|");
    h.update(op.as_bytes());
    for p in parts {
        h.update(b"|");
        h.update(p.as_bytes());
    }
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

struct Lock {
    file: File,
}

impl Lock {
    fn acquire(path: &PathBuf) -> std::io::Result<Lock> {
        let file = OpenOptions::new().create(true).truncate(false).write(true).open(path)?;
        let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX) };
        if rc != 0 {
            return Err(std::io::Error::last_os_error());
        }
        Ok(Lock { file })
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        unsafe { libc::flock(self.file.as_raw_fd(), libc::LOCK_UN) };
    }
}

impl Cache {
    /// The cache configured by the environment, if any.
    pub fn from_env() -> Option<Cache> {
        std::env::var_os("RAINBOW_CACHE_DIR").map(|d| Cache { dir: PathBuf::from(d) })
    }

    pub fn dir(&self) -> &PathBuf {
        &self.dir
    }

    fn data_path(&self) -> PathBuf {
        self.dir.join("cache.jsonl")
    }

    fn lock_path(&self) -> PathBuf {
        self.dir.join("cache.lock")
    }

    fn read_entries(&self) -> Vec<CacheEntry> {
        let Ok(file) = File::open(self.data_path()) else {
            return Vec::new();
        };
        BufReader::new(file)
            .lines()
            .map_while(|l| l.ok())
            .filter_map(|l| serde_json::from_str(&l).ok())
            .collect()
    }

    pub fn lookup(&self, key: &str) -> Option<serde_json::Value> {
        self.read_entries()
            .into_iter()
            .rev()
            .find(|e| e.key == key)
            .map(|e| e.value)
    }

    pub fn store(&self, key: &str, op: &str, value: serde_json::Value) {
        if std::fs::create_dir_all(&self.dir).is_err() {
            return; // caching is best-effort
        }
        let Ok(_lock) = Lock::acquire(&self.lock_path()) else {
            return;
        };
        let entry = CacheEntry {
            key: key.to_string(),
            op: op.to_string(),
            value,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            created_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        if let Ok(mut f) = OpenOptions::new().create(true).append(true).open(self.data_path()) {
            let _ = writeln!(f, "{}", serde_json::to_string(&entry).expect("serializable"));
        }
    }

    pub fn len(&self) -> usize {
        self.read_entries().len()
    }

    pub fn clear(&self) -> std::io::Result<()> {
        match std::fs::remove_file(self.data_path()) {
            Ok(()) => Ok(()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(()),
            Err(e) => Err(e),
        }
    }
}
