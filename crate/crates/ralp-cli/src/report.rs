//! Run reports and output directory management.
//!
//! Everything in `report.txt`, `report.csv` and the task CSVs is a pure
//! function of config and inputs, so a rerun with the same seed and a
//! scripted backend produces byte-identical files. Volatile data
//! (wall time, LM latency, timestamps) lives in `run_meta.txt` and
//! `trial_log.txt` instead.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use ralp_lm::GatewayStats;

pub struct RunReport {
    pub command: String,
    pub config_hash: String,
    pub backend: String,
    /// `(key, value)` metric lines in insertion order.
    pub metrics: Vec<(String, String)>,
    pub warnings: Vec<String>,
    /// Operation-level failures (skipped pairs, LM errors): the run
    /// completes but exits nonzero.
    pub partial_failures: usize,
    started: Instant,
}

impl RunReport {
    pub fn new(command: &str, config_hash: &str, backend: &str) -> Self {
        Self {
            command: command.to_owned(),
            config_hash: config_hash.to_owned(),
            backend: backend.to_owned(),
            metrics: Vec::new(),
            warnings: Vec::new(),
            partial_failures: 0,
            started: Instant::now(),
        }
    }

    pub fn metric(&mut self, key: &str, value: impl std::fmt::Display) {
        self.metrics.push((key.to_owned(), value.to_string()));
    }

    pub fn metric_f64(&mut self, key: &str, value: f64) {
        self.metrics.push((key.to_owned(), format_float(value)));
    }

    pub fn warn_all(&mut self, warnings: Vec<String>) {
        self.warnings.extend(warnings);
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ralp run report");
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "config: {}", self.config_hash);
        let _ = writeln!(out, "backend: {}", self.backend);
        let _ = writeln!(out);
        let _ = writeln!(out, "[metrics]");
        for (key, value) in &self.metrics {
            let _ = writeln!(out, "{key} = {value}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "[warnings] ({})", self.warnings.len());
        for w in &self.warnings {
            let _ = writeln!(out, "- {w}");
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        for (key, value) in &self.metrics {
            let _ = writeln!(out, "{key},{value}");
        }
        out
    }

    /// Write report artifacts; returns the exit code the process should
    /// finish with (0 clean, 1 with partial failures).
    pub fn write(&self, dir: &Path, stats: GatewayStats) -> Result<i32> {
        write_file(&dir.join("report.txt"), &self.render_text())?;
        write_file(&dir.join("report.csv"), &self.render_csv())?;
        let meta = format!(
            "wall_time_ms: {}\nlm_calls: {}\nlm_prompt_tokens: {}\nlm_completion_tokens: {}\npartial_failures: {}\n",
            self.started.elapsed().as_millis(),
            stats.calls,
            stats.prompt_tokens,
            stats.completion_tokens,
            self.partial_failures,
        );
        write_file(&dir.join("run_meta.txt"), &meta)?;
        Ok(if self.partial_failures > 0 { 1 } else { 0 })
    }
}

/// Deterministic float formatting for reports.
pub fn format_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v:.6}")
    }
}

pub fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}

/// Resolve the output directory: a fresh path is used as-is; an existing
/// one gets a unique timestamped subdirectory so reruns never clobber
/// earlier outputs.
pub fn prepare_out_dir(base: &Path) -> Result<PathBuf> {
    if !base.exists() {
        std::fs::create_dir_all(base)
            .with_context(|| format!("creating {}", base.display()))?;
        return Ok(base.to_path_buf());
    }
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    for n in 0..10_000 {
        let candidate = base.join(format!("run-{stamp}-{n}"));
        if !candidate.exists() {
            std::fs::create_dir_all(&candidate)
                .with_context(|| format!("creating {}", candidate.display()))?;
            return Ok(candidate);
        }
    }
    anyhow::bail!("could not allocate an output directory under {}", base.display());
}

/// Render a pretty metrics table row in the benchmark layout.
pub fn metrics_table(label: &str, metrics: &ralp_eval::MetricsReport<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<24} {:>7} {:>7} {:>7} {:>7}", "model", "MRR", "@1", "@3", "@10");
    let _ = writeln!(
        out,
        "{:<24} {:>7.3} {:>7.3} {:>7.3} {:>7.3}",
        label,
        metrics.mrr,
        metrics.hits_at(1).unwrap_or(0.0),
        metrics.hits_at(3).unwrap_or(0.0),
        metrics.hits_at(10).unwrap_or(0.0),
    );
    out
}
