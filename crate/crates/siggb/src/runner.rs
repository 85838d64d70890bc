//! Drives one (system, strategy) benchmark job: engine or oracle run,
//! optional oracle verification and certify-mode witness check, timeout
//! and pair-ceiling handling, statistics collection.

use crate::engine::{certify, incremental_gb_into, EngineOptions, EngineStats};
use crate::error::{Error, Result};
use crate::oracle::{self, GroebnerBasis};
use crate::stats::RunStats;
use crate::strategy::StrategyConfig;
use crate::systems::SystemSpec;
use std::time::{Duration, Instant};

/// Pair ceiling applied when the redundancy check is disabled and no
/// explicit limit is given; whether the engine terminates without the
/// check is monitored, not assumed.
pub const DEFAULT_PAIR_CEILING: u64 = 200_000;

#[derive(Debug, Clone, Default)]
pub struct RunFlags {
    /// Compare the result against the Buchberger oracle.
    pub verify: bool,
    /// Track cofactors and check the module witness after the run.
    pub certify: bool,
    /// Disable the signature-redundancy gate (original-F5 fidelity).
    pub no_redundancy_check: bool,
    /// Signature-safe tail reduction.
    pub tail_reduce: bool,
    /// Runtime invariant verification.
    pub checks: bool,
    pub timeout: Option<Duration>,
    pub pair_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Completed,
    /// Verification or certification failed; the basis is wrong.
    VerificationFailed,
    TimedOut,
    PairCeilingHit,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub stats: RunStats,
    pub status: RunStatus,
    pub basis: Option<GroebnerBasis>,
    pub engine: EngineStats,
}

/// Runs `spec` under the named strategy (`buchberger` selects the oracle).
pub fn run_benchmark(spec: &SystemSpec, strategy: &str, flags: &RunFlags) -> Result<RunOutcome> {
    let start = Instant::now();
    if strategy == "buchberger" {
        return run_oracle(spec, flags, start);
    }
    let Some(mut strat) = StrategyConfig::by_name(strategy) else {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: format!("unknown strategy `{strategy}`"),
        });
    };
    if flags.no_redundancy_check {
        strat.redundancy_check = false;
    }
    if flags.tail_reduce {
        strat.tail_reduce = true;
    }
    let opts = EngineOptions {
        certify: flags.certify,
        checks: flags.checks,
        pair_limit: flags.pair_limit.or_else(|| {
            (!strat.redundancy_check).then_some(DEFAULT_PAIR_CEILING)
        }),
        deadline: flags.timeout.map(|t| start + t),
    };

    let mut estats = EngineStats::default();
    match incremental_gb_into(&spec.ring, &spec.gens, &strat, &opts, &mut estats) {
        Ok((basis, trace)) => {
            let mut status = RunStatus::Completed;
            if flags.verify {
                let want = oracle::buchberger(&spec.ring, &spec.gens)?;
                if !oracle::ideals_equal(&spec.ring, &basis, &want)? {
                    status = RunStatus::VerificationFailed;
                }
            }
            if flags.certify && !certify(&spec.ring, trace.as_deref().unwrap_or(&[])) {
                status = RunStatus::VerificationFailed;
            }
            Ok(RunOutcome {
                stats: collect(spec, strat.name(), &estats, basis.polys.len(), start),
                status,
                basis: Some(basis),
                engine: estats,
            })
        }
        // Aborted runs keep their partial counts.
        Err(Error::Timeout) => Ok(RunOutcome {
            stats: collect(spec, strat.name(), &estats, 0, start),
            status: RunStatus::TimedOut,
            basis: None,
            engine: estats,
        }),
        Err(Error::PairLimitExceeded(_)) => Ok(RunOutcome {
            stats: collect(spec, strat.name(), &estats, 0, start),
            status: RunStatus::PairCeilingHit,
            basis: None,
            engine: estats,
        }),
        Err(e) => Err(e),
    }
}

fn run_oracle(spec: &SystemSpec, flags: &RunFlags, start: Instant) -> Result<RunOutcome> {
    let (gb, ostats) = oracle::buchberger_with_stats(&spec.ring, &spec.gens)?;
    let mut engine = EngineStats::default();
    engine.pairs_reduced = ostats.pairs_reduced;
    engine.zero_reductions = ostats.zero_reductions;
    let stats = RunStats {
        system: spec.name.clone(),
        strategy: "buchberger".into(),
        pairs_reduced: ostats.pairs_reduced,
        zero_reductions: ostats.zero_reductions,
        basis_size: gb.polys.len() as u64,
        skipped_inputs: 0,
        time_ms: start.elapsed().as_millis() as u64,
    };
    let _ = flags;
    Ok(RunOutcome {
        stats,
        status: RunStatus::Completed,
        basis: Some(gb),
        engine,
    })
}

fn collect(
    spec: &SystemSpec,
    strategy: &str,
    e: &EngineStats,
    basis_size: usize,
    start: Instant,
) -> RunStats {
    RunStats {
        system: spec.name.clone(),
        strategy: strategy.to_string(),
        pairs_reduced: e.pairs_reduced,
        zero_reductions: e.zero_reductions,
        basis_size: basis_size as u64,
        skipped_inputs: e.skipped_inputs,
        time_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::gen_cyclic;

    #[test]
    fn engine_and_oracle_agree_on_cyclic4() {
        let spec = gen_cyclic(4, 32003).unwrap();
        let flags = RunFlags {
            verify: true,
            checks: true,
            ..Default::default()
        };
        for strat in ["f5", "f5p", "ggv", "arri", "minmon"] {
            let out = run_benchmark(&spec, strat, &flags).unwrap();
            assert_eq!(out.status, RunStatus::Completed, "{strat}");
            assert!(out.engine.clean(), "{strat}: {:?}", out.engine);
        }
    }

    #[test]
    fn deterministic_stats() {
        let spec = gen_cyclic(5, 32003).unwrap();
        let flags = RunFlags::default();
        let a = run_benchmark(&spec, "arri", &flags).unwrap();
        let b = run_benchmark(&spec, "arri", &flags).unwrap();
        let strip = |mut s: RunStats| {
            s.time_ms = 0;
            s
        };
        assert_eq!(strip(a.stats), strip(b.stats));
    }

    #[test]
    fn unknown_strategy_is_reported() {
        let spec = gen_cyclic(4, 32003).unwrap();
        assert!(run_benchmark(&spec, "f6", &RunFlags::default()).is_err());
    }
}
