//! Flat key-value run configuration with CLI-flag overrides.
//!
//! Format: `key = value` lines, `#` comments. Secrets (the API key) come
//! only from the environment, never from config files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("{}:{}: expected `key = value`", path.display(), lineno + 1))?;
            cfg.set(key.trim(), value.trim());
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        if value.is_empty() {
            self.values.remove(key);
        } else {
            self.values.insert(key.to_owned(), value.to_owned());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_or(&self, key: &str, default: &str) -> String {
        self.get(key).unwrap_or(default).to_owned()
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .with_context(|| format!("missing required config key `{key}`"))
    }

    pub fn parse_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse::<T>()
                .map_err(|e| anyhow::anyhow!("config key `{key}` = `{raw}`: {e}")),
        }
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(PathBuf::from)
    }

    pub fn require_path(&self, key: &str) -> Result<PathBuf> {
        Ok(PathBuf::from(self.require(key)?))
    }

    /// The mandatory run seed.
    pub fn seed(&self) -> Result<u64> {
        self.require("seed")?
            .parse::<u64>()
            .context("config key `seed` must be an unsigned integer")
    }

    /// Validate that every path-valued key that is set points at an
    /// existing file; failures are reported exhaustively.
    pub fn validate_paths(&self, keys: &[&str]) -> Result<()> {
        let mut missing = Vec::new();
        for key in keys {
            if let Some(path) = self.path(key) {
                if !path.exists() {
                    missing.push(format!("{key} = {}", path.display()));
                }
            }
        }
        if !missing.is_empty() {
            bail!("missing input files:\n  {}", missing.join("\n  "));
        }
        Ok(())
    }

    /// Canonical snapshot: sorted `key = value` lines.
    pub fn snapshot(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.values {
            out.push_str(&format!("{key} = {value}\n"));
        }
        out
    }

    pub fn snapshot_hash(&self) -> String {
        let digest = Sha256::digest(self.snapshot().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_and_overrides() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment\nseed = 7\nlm.model = qwen\n").unwrap();
        let mut cfg = RunConfig::from_file(file.path()).unwrap();
        assert_eq!(cfg.seed().unwrap(), 7);
        cfg.set("seed", "9");
        assert_eq!(cfg.seed().unwrap(), 9);
        assert_eq!(cfg.get_or("absent", "x"), "x");
    }

    #[test]
    fn snapshot_is_sorted_and_hashable() {
        let mut cfg = RunConfig::default();
        cfg.set("b", "2");
        cfg.set("a", "1");
        assert_eq!(cfg.snapshot(), "a = 1\nb = 2\n");
        assert_eq!(cfg.snapshot_hash().len(), 16);
    }

    #[test]
    fn missing_paths_reported_exhaustively() {
        let mut cfg = RunConfig::default();
        cfg.set("data.train", "/nonexistent/a");
        cfg.set("data.test", "/nonexistent/b");
        let err = cfg.validate_paths(&["data.train", "data.test"]).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("/nonexistent/a") && text.contains("/nonexistent/b"));
    }
}
