//! `ralp` — the experiment harness binary.
//!
//! Every subcommand reads a flat key-value config (overridable by
//! flags), resolves a fresh output directory, runs, and writes a
//! deterministic report plus task artifacts there.

mod commands;
mod config;
mod report;
mod scripted;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "ralp",
    about = "LM-backed link prediction, enrichment, numeric and instance-retrieval experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key-value config file; flags below override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Run seed (mandatory, here or in the config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Optimizer preset.
    #[arg(long, global = true, value_parser = ["light", "medium"])]
    preset: Option<String>,

    /// Enrichment confidence threshold (> 0.5).
    #[arg(long, global = true)]
    theta: Option<f64>,

    /// Class expression syntax for the owl command.
    #[arg(long, global = true, value_parser = ["manchester", "dl"])]
    syntax: Option<String>,

    /// Namespace prefixes in owl prompts.
    #[arg(long, global = true, value_parser = ["on", "off"])]
    namespace: Option<String>,

    /// LM backend.
    #[arg(long, global = true, value_parser = ["remote", "scripted"])]
    backend: Option<String>,

    /// Output directory (a fresh subdirectory is created if it exists).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Learn prompt state with the trial loop.
    Optimize,
    /// Rank test tail queries with the scoring pipeline.
    Predict,
    /// Mine high-confidence missing triples and emit an augmented split.
    Enrich,
    /// Summarize precomputed ranks into MRR / Hits@k.
    EvalRank {
        /// File of integer ranks (plain lines or the last CSV column).
        #[arg(long)]
        ranks: PathBuf,
    },
    /// Numeric literal interval prediction and calibration report.
    Numeric,
    /// Instance retrieval over class expressions.
    Owl,
    /// Train the embedding baseline.
    KgeTrain,
    /// Evaluate an embedding checkpoint.
    KgeEval,
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.set("seed", &seed.to_string());
    }
    if let Some(preset) = &cli.preset {
        cfg.set("optimizer.preset", preset);
    }
    if let Some(theta) = cli.theta {
        cfg.set("enrich.theta", &theta.to_string());
    }
    if let Some(syntax) = &cli.syntax {
        cfg.set("owl.syntax", syntax);
    }
    if let Some(namespace) = &cli.namespace {
        cfg.set("owl.namespace", namespace);
    }
    if let Some(backend) = &cli.backend {
        cfg.set("backend", backend);
    }
    if let Some(out) = &cli.out {
        cfg.set("out", &out.display().to_string());
    }
    // the seed is mandatory for every run
    cfg.seed()?;
    Ok(cfg)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    let cfg = build_config(&cli)?;
    let out_base = PathBuf::from(cfg.get_or("out", "runs"));
    let out = report::prepare_out_dir(&out_base)?;
    eprintln!("writing outputs to {}", out.display());
    let ctx = commands::RunContext { cfg, out };
    match &cli.command {
        Command::Optimize => commands::run_optimize(&ctx),
        Command::Predict => commands::run_predict(&ctx),
        Command::Enrich => commands::run_enrich(&ctx),
        Command::EvalRank { ranks } => commands::run_eval_rank(&ctx, ranks),
        Command::Numeric => commands::run_numeric(&ctx),
        Command::Owl => commands::run_owl(&ctx),
        Command::KgeTrain => commands::run_kge_train(&ctx),
        Command::KgeEval => commands::run_kge_eval(&ctx),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => {
            eprintln!("completed with partial failures (exit {code})");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
