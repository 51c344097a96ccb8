//! Append-only result cache: one JSON record per line.
//!
//! Every append takes an exclusive lock on the file and writes the whole
//! line in one call, so concurrent writers (threads or processes) never
//! interleave. Unreadable lines are skipped with a warning.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub fingerprint: String,
    pub operation: String,
    pub version: String,
    pub params: Value,
    pub result: Value,
    pub created_unix: u64,
}

impl ResultRecord {
    pub fn new(operation: &str, params: Value, result: Value) -> Self {
        ResultRecord {
            fingerprint: fingerprint(operation, &params),
            operation: operation.to_string(),
            version: VERSION.to_string(),
            params,
            result,
            created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        }
    }
}

/// SHA-256 over version, operation and the key-sorted parameter JSON.
pub fn fingerprint(operation: &str, params: &Value) -> String {
    fingerprint_with_version(VERSION, operation, params)
}

pub fn fingerprint_with_version(version: &str, operation: &str, params: &Value) -> String {
    let mut h = Sha256::new();
    h.update(version.as_bytes());
    h.update(b"\n");
    h.update(operation.as_bytes());
    h.update(b"\n");
    h.update(params.to_string().as_bytes());
    format!("{:x}", h.finalize())
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    index: HashMap<String, Value>,
    pub skipped: usize,
}

impl Cache {
    /// Loads the index; a missing file is an empty cache.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = Cache {
            path: path.to_path_buf(),
            index: HashMap::new(),
            skipped: 0,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        for (lineno, line) in BufReader::new(&file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<ResultRecord>(&line) {
                Ok(rec) if rec.fingerprint == fingerprint_with_version(&rec.version, &rec.operation, &rec.params) => {
                    cache.index.insert(rec.fingerprint, rec.result);
                }
                _ => {
                    cache.skipped += 1;
                    eprintln!("warning: {}:{}: skipping unreadable cache line", path.display(), lineno + 1);
                }
            }
        }
        file.unlock()?;
        Ok(cache)
    }

    pub fn get(&self, fingerprint: &str) -> Option<&Value> {
        self.index.get(fingerprint)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn store(&self, record: &ResultRecord) -> io::Result<()> {
        append_record(&self.path, record)
    }
}

pub fn append_record(path: &Path, record: &ResultRecord) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut line = serde_json::to_string(record).map_err(io::Error::other)?;
    line.push('\n');
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.lock()?;
    let written = file.write_all(line.as_bytes()).and_then(|_| file.flush());
    file.unlock()?;
    written
}

/// `$XDG_CACHE_HOME/rtl/results.jsonl`, else under `$HOME/.cache`.
pub fn default_path() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("rtl").join("results.jsonl"))
}
