//! Append-only JSON-lines result cache keyed by spec hash, operation and
//! tool version.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const CACHE_FILE: &str = "results.jsonl";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub hash: String,
    pub operation: String,
    pub version: String,
    pub result: Value,
    pub timestamp: u64,
    pub exhaustive: Option<bool>,
    pub probable: Option<bool>,
}

impl CacheEntry {
    pub fn new(hash: &str, operation: &str, version: &str, result: Value) -> CacheEntry {
        let flag = |k: &str| result.get(k).and_then(Value::as_bool);
        CacheEntry {
            hash: hash.into(),
            operation: operation.into(),
            version: version.into(),
            exhaustive: flag("exhaustive"),
            probable: flag("probable"),
            result,
            timestamp: now(),
        }
    }
}

pub fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Clone, Debug)]
pub struct Cache {
    path: Option<PathBuf>,
    version: String,
}

impl Cache {
    /// A disabled cache: every lookup misses and stores are dropped.
    pub fn disabled() -> Cache {
        Cache {
            path: None,
            version: String::new(),
        }
    }

    /// Opens (creating if needed) the cache in `dir`. An unusable directory
    /// yields a disabled cache and a warning.
    pub fn open(dir: &Path, version: &str) -> Cache {
        let path = dir.join(CACHE_FILE);
        let usable = fs::create_dir_all(dir)
            .and_then(|_| OpenOptions::new().create(true).append(true).open(&path))
            .is_ok();
        if !usable {
            log::warn!(
                "cache directory {} is not writable; continuing without cache",
                dir.display()
            );
            return Cache::disabled();
        }
        Cache {
            path: Some(path),
            version: version.into(),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.path.is_some()
    }

    /// The most recent entry for `(hash, operation)` at this version.
    pub fn lookup(&self, hash: &str, operation: &str) -> Option<CacheEntry> {
        let path = self.path.as_ref()?;
        let file = File::open(path).ok()?;
        let mut found = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let Ok(line) = line else { break };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(&line) {
                Ok(e)
                    if e.hash == hash && e.operation == operation && e.version == self.version =>
                {
                    found = Some(e)
                }
                Ok(_) => {}
                Err(err) => log::warn!("skipping corrupted cache line {}: {err}", i + 1),
            }
        }
        found
    }

    /// Appends one entry as a single write.
    pub fn store(&self, hash: &str, operation: &str, result: &Value) {
        let Some(path) = &self.path else { return };
        let entry = CacheEntry::new(hash, operation, &self.version, result.clone());
        let mut line = serde_json::to_string(&entry).expect("cache entries serialize");
        line.push('\n');
        let written = OpenOptions::new()
            .append(true)
            .open(path)
            .and_then(|mut f| f.write_all(line.as_bytes()));
        if let Err(e) = written {
            log::warn!("could not append to cache {}: {e}", path.display());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path(), "1.0");
        let r = json!({"delta": "3^(1/2)", "exhaustive": true});
        cache.store("abc", "delta", &r);
        let e = cache.lookup("abc", "delta").unwrap();
        assert_eq!(e.result, r);
        assert_eq!(e.exhaustive, Some(true));
        assert!(cache.lookup("abc", "height").is_none());
        assert!(Cache::open(dir.path(), "1.1")
            .lookup("abc", "delta")
            .is_none());
    }

    #[test]
    fn corrupted_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path(), "1.0");
        cache.store("a", "op", &json!(1));
        let mut f = OpenOptions::new()
            .append(true)
            .open(dir.path().join(CACHE_FILE))
            .unwrap();
        f.write_all(b"{not json\n").unwrap();
        cache.store("b", "op", &json!(2));
        assert_eq!(cache.lookup("a", "op").unwrap().result, json!(1));
        assert_eq!(cache.lookup("b", "op").unwrap().result, json!(2));
    }

    #[test]
    fn unwritable_directory_disables() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        fs::write(&file, b"x").unwrap();
        let cache = Cache::open(&file.join("sub"), "1.0");
        assert!(!cache.is_enabled());
        cache.store("a", "op", &json!(1));
        assert!(cache.lookup("a", "op").is_none());
    }
}
