//! `key = value` configuration: budgets, cache directory, thread count.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use super::Format;

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "BRUHAT_CONFIG";
/// Used when neither `--config` nor the environment variable is set.
pub const DEFAULT_CONFIG: &str = "bruhat.conf";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub budget_nodes: Option<u64>,
    pub budget_secs: Option<f64>,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: {key} must be {what}", lineno + 1);
            match key {
                "budget_nodes" => {
                    cfg.budget_nodes = Some(value.parse().map_err(|_| bad("an integer"))?)
                }
                "budget_secs" => {
                    let secs: f64 = value.parse().map_err(|_| bad("a number"))?;
                    if !(secs.is_finite() && secs > 0.0) {
                        return Err(bad("positive"));
                    }
                    cfg.budget_secs = Some(secs);
                }
                "cache_dir" => cfg.cache_dir = Some(PathBuf::from(value)),
                "format" => {
                    cfg.format =
                        Some(Format::from_str(value, true).map_err(|_| bad("text, json or csv"))?)
                }
                "threads" => cfg.threads = Some(value.parse().map_err(|_| bad("an integer"))?),
                _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
            }
        }
        Ok(cfg)
    }

    /// Explicit path first, then the environment variable, then the default
    /// file. Only a missing default file is tolerated.
    pub fn load(explicit: Option<&Path>) -> Result<Self, String> {
        let (path, required) = match explicit {
            Some(p) => (p.to_path_buf(), true),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) => (PathBuf::from(p), true),
                None => (PathBuf::from(DEFAULT_CONFIG), false),
            },
        };
        match fs::read_to_string(&path) {
            Ok(text) => Self::parse(&text).map_err(|e| format!("{}: {e}", path.display())),
            Err(_) if !required => Ok(Self::default()),
            Err(e) => Err(format!("{}: {e}", path.display())),
        }
    }
}
