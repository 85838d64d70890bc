//! `siggb` — signature-based Groebner basis benchmarks.
//!
//! `siggb compute --system cyclic6,eco7 --strategy f5,arri --verify`
//! runs every (system, strategy) combination, prints one report line per
//! job and optionally appends the fixed-column CSV. Independent jobs fan
//! out across worker threads; `SIGGB_THREADS` caps the worker count.

use clap::{Parser, Subcommand};
use siggb::runner::{run_benchmark, RunFlags, RunOutcome, RunStatus};
use siggb::stats::CSV_HEADER;
use siggb::systems::{self, SystemSpec, DEFAULT_CHAR};
use siggb::Error;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "siggb", version, about = "Signature-based Groebner basis benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Groebner bases and report critical-pair statistics.
    Compute(ComputeArgs),
}

#[derive(clap::Args)]
struct ComputeArgs {
    /// Comma-separated systems: katsuraN, cyclicN, ecoN, or a path to a
    /// .poly file.
    #[arg(long, required = true, value_delimiter = ',')]
    system: Vec<String>,

    /// Comma-separated strategies: f5, f5p, ggv, arri, minmon, buchberger.
    #[arg(long, required = true, value_delimiter = ',')]
    strategy: Vec<String>,

    /// Check the result against the Buchberger oracle.
    #[arg(long)]
    verify: bool,

    /// Track module cofactors and check the witness after the run.
    #[arg(long)]
    certify: bool,

    /// Original-F5 fidelity: drop the signature-redundancy gate. A pair
    /// ceiling guards termination.
    #[arg(long)]
    no_redundancy_check: bool,

    /// Signature-safe tail reduction.
    #[arg(long)]
    tail_reduce: bool,

    /// Write statistics rows to this CSV file.
    #[arg(long, value_name = "out.csv")]
    stats: Option<String>,

    /// Abort each job after this many seconds.
    #[arg(long, value_name = "secs")]
    timeout: Option<u64>,

    /// Monomial ordering (only degrevlex is available).
    #[arg(long, default_value = "degrevlex")]
    order: String,

    /// Field characteristic for the generated benchmark systems.
    #[arg(long, default_value_t = DEFAULT_CHAR)]
    char: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Compute(args) = cli.command;
    match compute(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::NotPrime(_) | Error::CharOutOfRange(_) => {
                    ExitCode::from(3)
                }
                Error::Timeout => ExitCode::from(4),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn compute(args: &ComputeArgs) -> Result<ExitCode, Error> {
    if args.order != "degrevlex" {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: format!("unsupported ordering `{}`", args.order),
        });
    }
    for s in &args.strategy {
        if s != "buchberger" && siggb::StrategyConfig::by_name(s).is_none() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("unknown strategy `{s}`"),
            });
        }
    }

    let mut specs: Vec<SystemSpec> = Vec::new();
    for name in &args.system {
        specs.push(load_system(name, args.char)?);
    }

    let flags = RunFlags {
        verify: args.verify,
        certify: args.certify,
        no_redundancy_check: args.no_redundancy_check,
        tail_reduce: args.tail_reduce,
        checks: false,
        timeout: args.timeout.map(Duration::from_secs),
        pair_limit: None,
    };

    // One job per (system, strategy), fanned out over workers; results are
    // reported by a single writer in job order.
    let jobs: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|i| (0..args.strategy.len()).map(move |j| (i, j)))
        .collect();
    let workers = worker_count(jobs.len());
    let results: Vec<Option<Result<RunOutcome, Error>>> = {
        let slots: Mutex<Vec<Option<Result<RunOutcome, Error>>>> =
            Mutex::new((0..jobs.len()).map(|_| None).collect());
        let next = Mutex::new(0usize);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let k = {
                        let mut n = next.lock().unwrap();
                        if *n >= jobs.len() {
                            break;
                        }
                        let k = *n;
                        *n += 1;
                        k
                    };
                    let (si, ti) = jobs[k];
                    let out = run_benchmark(&specs[si], &args.strategy[ti], &flags);
                    slots.lock().unwrap()[k] = Some(out);
                });
            }
        });
        slots.into_inner().unwrap()
    };

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut worst: u8 = 0;
    for out in results.into_iter().flatten() {
        let out = out?;
        report(&out);
        csv.push_str(&out.stats.to_csv_row());
        csv.push('\n');
        let code = match out.status {
            RunStatus::Completed => 0,
            RunStatus::VerificationFailed => 2,
            RunStatus::TimedOut => 4,
            RunStatus::PairCeilingHit => 1,
        };
        worst = priority_merge(worst, code);
    }
    if let Some(path) = &args.stats {
        std::fs::write(path, &csv)?;
    }
    Ok(ExitCode::from(worst))
}

/// Verification failures dominate timeouts, timeouts dominate the generic
/// ceiling abort.
fn priority_merge(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        2 => 3,
        4 => 2,
        1 => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn worker_count(jobs: usize) -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("SIGGB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(available);
    cap.min(jobs).max(1)
}

fn load_system(name: &str, characteristic: u64) -> Result<SystemSpec, Error> {
    if let Some(spec) = systems::by_name(name, characteristic) {
        return spec;
    }
    let path = Path::new(name);
    if path.extension().is_some_and(|e| e == "poly") {
        let text = std::fs::read_to_string(path)?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("input");
        return siggb::parse::parse_system(stem, &text);
    }
    Err(Error::Parse {
        line: 1,
        col: 1,
        msg: format!("unknown system `{name}` (expected katsuraN, cyclicN, ecoN or a .poly path)"),
    })
}

fn report(out: &RunOutcome) {
    let s = &out.stats;
    let status = match out.status {
        RunStatus::Completed => "ok",
        RunStatus::VerificationFailed => "VERIFICATION FAILED",
        RunStatus::TimedOut => "TIMED OUT (stats incomplete)",
        RunStatus::PairCeilingHit => "PAIR CEILING HIT (stats incomplete)",
    };
    println!(
        "{:<16} {:<10} pairs={:<6} zero={:<5} basis={:<5} skipped={:<2} time={}ms [{}]",
        s.system,
        s.strategy,
        s.pairs_reduced,
        s.zero_reductions,
        s.basis_size,
        s.skipped_inputs,
        s.time_ms,
        status
    );
}
