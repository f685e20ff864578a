use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::SweepError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Bound k for A_k^(1).
    pub k1: u64,
    /// Bound k for A_k^(2).
    pub k2: u64,
    pub dedupe: bool,
    pub worker_count: usize,
    pub output_path: Option<PathBuf>,
    /// Keep one record per instance in the report.
    pub record_instances: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { k1: 50, k2: 10, dedupe: true, worker_count: 1, output_path: None, record_instances: true }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, SweepError> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(SweepError::Config(format!("{key}: expected a boolean, got {v:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, SweepError> {
    v.parse().map_err(|_| SweepError::Config(format!("{key}: expected a non-negative integer, got {v:?}")))
}

impl SweepConfig {
    /// The full parameter range: k1 = 1000, k2 = 100, no deduplication.
    pub fn full_scale() -> Self {
        SweepConfig { k1: 1000, k2: 100, dedupe: false, record_instances: false, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.k1 < 1 || self.k2 < 1 {
            return Err(SweepError::Config("k1 and k2 must be at least 1".into()));
        }
        if self.worker_count < 1 {
            return Err(SweepError::Config("worker_count must be at least 1".into()));
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#`
    /// comments are skipped; string values may be quoted.
    pub fn apply_kv(mut self, text: &str) -> Result<Self, SweepError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(SweepError::Config(format!("line {}: expected key = value", n + 1)));
            };
            let key = k.trim();
            let v = v.trim().trim_matches('"');
            match key {
                "k1" => self.k1 = parse_num(key, v)?,
                "k2" => self.k2 = parse_num(key, v)?,
                "dedupe" => self.dedupe = parse_bool(key, v)?,
                "workers" | "worker_count" => self.worker_count = parse_num(key, v)?,
                "out" | "output" | "output_path" => self.output_path = Some(PathBuf::from(v)),
                "record_instances" => self.record_instances = parse_bool(key, v)?,
                _ => return Err(SweepError::Config(format!("line {}: unknown key {key:?}", n + 1))),
            }
        }
        self.validate()?;
        Ok(self)
    }

    /// Identifies the work list; worker count and output path do not matter.
    pub(super) fn fingerprint(&self) -> String {
        format!("k1={};k2={};dedupe={};record={}", self.k1, self.k2, self.dedupe, self.record_instances)
    }
}
