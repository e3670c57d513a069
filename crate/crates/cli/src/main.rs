//! Batch driver for the verification kernel: configure a superspace and
//! truncation bounds, run named suites, and emit deterministic reports.
//!
//! Exit codes: 0 all suites passed; 1 at least one suite failed or was
//! inconclusive; 2 configuration error; 3 internal invariant violation.

use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rttk_core::ncalg::import::presentation_from_json;
use rttk_core::report::{RunReport, Status, SuiteReport, SCHEMA_VERSION};
use rttk_core::suites::{self, Bounds, Mode, SuiteConfig, SuiteDef};
use rttk_core::KernelError;

#[derive(Parser)]
#[command(name = "rttk", version, about = "Exact verification suites for graded RTT algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites against a configured superspace.
    Run(RunArgs),
    /// Print the suite registry: names, certified statements, default bounds.
    ListSuites,
}

#[derive(Args)]
struct RunArgs {
    /// Even dimension M of the superspace.
    #[arg(long)]
    m: usize,
    /// Odd half-dimension n (sets N = 2n and enables the twisted suites).
    #[arg(long, conflicts_with = "big_n")]
    n: Option<usize>,
    /// Odd dimension N (untwisted configuration).
    #[arg(long = "big-n")]
    big_n: Option<usize>,
    /// Loop-exponent bound; defaults to each suite's registry value.
    #[arg(long = "loop-bound")]
    loop_bound: Option<i32>,
    /// Yangian level bound; defaults to each suite's registry value.
    #[arg(long = "level-bound")]
    level_bound: Option<i32>,
    /// Word-length truncation; defaults to each suite's registry value.
    #[arg(long = "word-bound")]
    word_bound: Option<usize>,
    /// Capital-Gamma recursion depth; defaults to each suite's registry value.
    #[arg(long = "gamma-depth")]
    gamma_depth: Option<i32>,
    /// Suite to run (repeatable, executed in the given order); all when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Output format.
    #[arg(long, value_parser = ["json", "text"], default_value = "json")]
    format: String,
    /// Run suites concurrently; output order still follows declaration order.
    #[arg(long)]
    parallel: bool,
    /// Omit per-suite timing so equal configurations serialize identically.
    #[arg(long = "no-timing")]
    no_timing: bool,
    /// Validate a custom presentation file (JSON import schema) before running.
    #[arg(long = "preset-file")]
    preset_file: Option<std::path::PathBuf>,
    /// Run each suite's documented single-sign mutation instead of the
    /// honest check; every suite must then fail with a nonempty witness.
    #[arg(long = "negative-controls")]
    negative_controls: bool,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::ListSuites => {
            list_suites();
            ExitCode::from(0)
        }
        Command::Run(args) => match run(&args) {
            Ok(all_passed) => ExitCode::from(if all_passed { 0 } else { 1 }),
            Err(KernelError::Config(msg)) => {
                eprintln!("configuration error: {msg}");
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("internal invariant violation: {e}");
                ExitCode::from(3)
            }
        },
    }
}

fn list_suites() {
    for s in suites::registry() {
        let b = s.default_bounds;
        println!(
            "{:<22} {}\n{:<22} default bounds: loop {}, level {}, word {}, gamma depth {}",
            s.name, s.certifies, "", b.loop_degree, b.level, b.word_length, b.gamma_depth
        );
    }
}

/// `twisted-quaternary` is accepted as an alias for the suite that records
/// the quaternary argument variant.
fn resolve(name: &str) -> Result<&'static SuiteDef, KernelError> {
    let canonical = if name == "twisted-quaternary" {
        "twisted-yangian"
    } else {
        name
    };
    suites::find(canonical)
        .ok_or_else(|| KernelError::config(format!("unknown suite '{name}' (see list-suites)")))
}

fn effective_config(args: &RunArgs, def: &SuiteDef) -> SuiteConfig {
    let d = def.default_bounds;
    let bounds = Bounds {
        loop_degree: args.loop_bound.unwrap_or(d.loop_degree),
        level: args.level_bound.unwrap_or(d.level),
        word_length: args.word_bound.unwrap_or(d.word_length),
        gamma_depth: args.gamma_depth.unwrap_or(d.gamma_depth),
    };
    match args.n {
        Some(n) => SuiteConfig::twisted(args.m, n, bounds),
        None => SuiteConfig::untwisted(args.m, args.big_n.unwrap_or(0), bounds),
    }
}

fn validate(args: &RunArgs) -> Result<(), KernelError> {
    if args.n.is_none() && args.big_n.is_none() {
        return Err(KernelError::config("give exactly one of --n / --big-n"));
    }
    if args.m == 0 && args.n.unwrap_or(0) == 0 && args.big_n.unwrap_or(0) == 0 {
        return Err(KernelError::config("superspace dimension must be positive"));
    }
    for b in [
        args.loop_bound.unwrap_or(1) as i64,
        args.level_bound.unwrap_or(1) as i64,
        args.word_bound.unwrap_or(1) as i64,
        args.gamma_depth.unwrap_or(1) as i64,
    ] {
        if b <= 0 {
            return Err(KernelError::config("bounds must be positive"));
        }
    }
    if let Some(path) = &args.preset_file {
        let doc = std::fs::read_to_string(path)
            .map_err(|e| KernelError::config(format!("preset file {}: {e}", path.display())))?;
        let quotient = presentation_from_json(&doc)
            .map_err(|e| KernelError::config(format!("preset file {}: {e}", path.display())))?;
        eprintln!(
            "preset file validated: {} spanning monomials within bounds",
            quotient.monomials().len()
        );
    }
    Ok(())
}

fn run(args: &RunArgs) -> Result<bool, KernelError> {
    validate(args)?;
    let selected: Vec<&'static SuiteDef> = if args.suites.is_empty() {
        suites::registry().iter().collect()
    } else {
        args.suites
            .iter()
            .map(|n| resolve(n))
            .collect::<Result<_, _>>()?
    };
    let mode = if args.negative_controls {
        Mode::Mutated
    } else {
        Mode::Honest
    };

    let execute = |def: &'static SuiteDef| -> Result<SuiteReport<SuiteConfig>, KernelError> {
        let cfg = effective_config(args, def);
        let start = Instant::now();
        let outcome = def.run(&cfg, mode)?;
        let elapsed = (!args.no_timing).then(|| start.elapsed().as_millis() as u64);
        Ok(SuiteReport {
            suite: def.name.to_string(),
            params: cfg,
            status: outcome.status,
            witnesses: outcome.witnesses,
            notes: outcome.notes,
            elapsed_millis: elapsed,
        })
    };

    let results: Vec<Result<SuiteReport<SuiteConfig>, KernelError>> = if args.parallel {
        use rayon::prelude::*;
        selected.par_iter().map(|d| execute(d)).collect()
    } else {
        selected.iter().map(|d| execute(d)).collect()
    };
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r?);
    }

    let expected = if args.negative_controls {
        Status::Fail
    } else {
        Status::Pass
    };
    let all_passed = reports.iter().all(|r| {
        r.status == expected && (r.status != Status::Fail || !r.witnesses.is_empty())
    });
    let run_report = RunReport {
        schema_version: SCHEMA_VERSION,
        reports,
        all_passed,
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if args.format == "json" {
        serde_json::to_writer_pretty(&mut out, &run_report)
            .map_err(|e| KernelError::internal(e.to_string()))?;
        writeln!(out).ok();
    } else {
        for r in &run_report.reports {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Inconclusive => "inconclusive",
            };
            match r.elapsed_millis {
                Some(ms) => writeln!(out, "{:<22} {status} ({ms} ms)", r.suite).ok(),
                None => writeln!(out, "{:<22} {status}", r.suite).ok(),
            };
            for w in &r.witnesses {
                writeln!(out, "  witness: {} -- {}", w.location, w.detail).ok();
            }
            for n in &r.notes {
                writeln!(out, "  note: {n}").ok();
            }
        }
        writeln!(
            out,
            "{}",
            if run_report.all_passed {
                "all suites passed"
            } else {
                "FAILURES PRESENT"
            }
        )
        .ok();
    }
    Ok(run_report.all_passed)
}
