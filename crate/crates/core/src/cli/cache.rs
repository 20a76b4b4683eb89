//! Run records keyed by a hash of (command, parameters, version).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub version: String,
    /// Exact bytes written to stdout.
    pub output: String,
    pub exit_code: i32,
    pub timestamp: u64,
}

impl RunRecord {
    pub fn new(
        command: &str,
        params: BTreeMap<String, String>,
        output: String,
        exit_code: i32,
    ) -> Self {
        Self {
            command: command.to_string(),
            params,
            version: ARTIFACT_VERSION.to_string(),
            output,
            exit_code,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn key(&self) -> String {
        cache_key(&self.command, &self.params, &self.version)
    }
}

/// Hex SHA-256 over a canonical JSON encoding; `BTreeMap` fixes key order.
pub fn cache_key(command: &str, params: &BTreeMap<String, String>, version: &str) -> String {
    let canonical = serde_json::json!({
        "command": command,
        "params": params,
        "version": version,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, command: &str, params: &BTreeMap<String, String>) -> Option<RunRecord> {
        let key = cache_key(command, params, ARTIFACT_VERSION);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let rec: RunRecord = serde_json::from_str(&text).ok()?;
        (rec.command == command && rec.params == *params && rec.version == ARTIFACT_VERSION)
            .then_some(rec)
    }

    /// Write to a temporary file in the same directory, then rename over
    /// the final name.
    pub fn put(&self, rec: &RunRecord) -> std::io::Result<PathBuf> {
        let path = self.path(&rec.key());
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", rec.key(), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(
                serde_json::to_string_pretty(rec)
                    .expect("record serializes")
                    .as_bytes(),
            )?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn key_is_stable_and_order_free() {
        let a = cache_key(
            "verify",
            &params(&[("suite", "thm-4.1"), ("n", "4")]),
            "1.0",
        );
        let b = cache_key(
            "verify",
            &params(&[("n", "4"), ("suite", "thm-4.1")]),
            "1.0",
        );
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        assert_ne!(a, cache_key("verify", &params(&[("n", "5")]), "1.0"));
        assert_ne!(
            a,
            cache_key(
                "verify",
                &params(&[("suite", "thm-4.1"), ("n", "4")]),
                "1.1"
            )
        );
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let p = params(&[("n", "4")]);
        assert!(cache.get("level", &p).is_none());
        let rec = RunRecord::new("level", p.clone(), "1234\n".into(), 0);
        cache.put(&rec).unwrap();
        let back = cache.get("level", &p).unwrap();
        assert_eq!(back.output, "1234\n");
        let leftovers = fs::read_dir(dir.path()).unwrap().filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .ends_with(".tmp")
        });
        assert_eq!(leftovers.count(), 0);
    }
}
