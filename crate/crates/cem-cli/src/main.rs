//! `cem` — batch verification runner for the complex-electrodynamics
//! library: selects suites and scenarios, executes the checks
//! deterministically for a given seed, and emits a machine-readable report.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]
mod config;
mod report;
mod runner;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use config::{ChannelKind, Format, RunConfig, Suite};
use report::{Report, Timing};

#[derive(Parser)]
#[command(
    name = "cem",
    version,
    about = "Verification runner for complex electrodynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Configuration file (flat key-value text); flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Suites to run (repeatable): identities, maxwell, balance, angular,
    /// boost, media, potentials, lagrangian, all.
    #[arg(long = "suite")]
    suites: Vec<String>,

    /// Scenario-name filter (repeatable).
    #[arg(long = "scenario")]
    scenarios: Vec<String>,

    /// Derivative channel: exact, fd2 or fd4.
    #[arg(long)]
    channel: Option<String>,

    /// Seed for every randomized draw.
    #[arg(long)]
    seed: Option<u64>,

    /// Speed of light used by the scenarios.
    #[arg(long)]
    c: Option<f64>,

    /// Samples per axis for grid-sampled checks.
    #[arg(long)]
    grid_n: Option<usize>,

    /// Finite-difference step override.
    #[arg(long)]
    fd_h: Option<f64>,

    /// Report destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format: json or csv.
    #[arg(long)]
    format: Option<String>,

    /// Suppress the per-record summary lines on stderr.
    #[arg(long)]
    quiet: bool,
}

fn build_config(args: &VerifyArgs) -> Result<RunConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            RunConfig::parse(&text).map_err(|e| e.to_string())?
        }
        None => RunConfig::default(),
    };

    if !args.suites.is_empty() {
        let mut suites = Vec::new();
        for s in &args.suites {
            if s == "all" {
                suites.extend_from_slice(&Suite::ALL);
            } else {
                suites.push(s.parse::<Suite>()?);
            }
        }
        suites.sort();
        suites.dedup();
        cfg.suites = suites;
    }
    if !args.scenarios.is_empty() {
        cfg.scenarios = args.scenarios.clone();
    }
    if let Some(ch) = &args.channel {
        cfg.channel = ch.parse::<ChannelKind>()?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(c) = args.c {
        if !(c > 0.0) {
            return Err("c must be positive".into());
        }
        cfg.c = c;
    }
    if let Some(n) = args.grid_n {
        if n < 2 {
            return Err("grid_n must be at least 2".into());
        }
        cfg.grid_n = n;
    }
    if let Some(h) = args.fd_h {
        if !(h > 0.0) {
            return Err("fd_h must be positive".into());
        }
        cfg.fd_h = Some(h);
    }
    if let Some(f) = &args.format {
        cfg.format = f.parse::<Format>()?;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    if cfg.suites.is_empty() {
        return Err("at least one suite is required".into());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify(args) = cli.command;

    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0);
    let t0 = Instant::now();
    let records = runner::run(&cfg);
    let timing = Timing {
        started_unix,
        wall_s: t0.elapsed().as_secs_f64(),
    };

    let out_path = cfg.out.clone();
    let report = Report::new(cfg, records, timing);

    if !args.quiet {
        for r in &report.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let slope = r
                .slope
                .map(|s| format!(" slope={s:.2}"))
                .unwrap_or_default();
            eprintln!(
                "{status} [{}] {} :: {} residual={:.3e} tol={:.3e} scale={:.3e}{slope}",
                r.suite, r.scenario, r.tag, r.residual, r.tolerance, r.scale
            );
        }
        eprintln!(
            "{} checks, {} passed, {} failed ({:.2} s)",
            report.summary.total,
            report.summary.passed,
            report.summary.failed,
            report.timing.wall_s
        );
    }

    let body = report.emit();
    match &out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
        }
    }

    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
