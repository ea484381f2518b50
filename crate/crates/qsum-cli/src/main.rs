//! qsum: exact verification of a family of multidimensional q-series
//! summation and transformation identities, with parallel parameter sweeps
//! and deterministic NDJSON reports.
//!
//! Exit codes: 0 all pass, 1 any fail, 2 usage error, 3 indeterminate
//! only.

mod cases;
mod cli;
mod emit;
mod pool;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use qsum_core::identities::{ConjectureParams, TheoremParams};

use cases::Case;
use cli::{Cli, Command, ProofStep, RangeArg, SweepTarget, VerifyTarget};
use emit::Emitter;
use pool::run_cases;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct UsageError(String);

impl From<String> for UsageError {
    fn from(msg: String) -> Self {
        UsageError(msg)
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(format!("i/o failure: {e}"))
    }
}

fn resolve_jobs(flag: Option<usize>) -> usize {
    if let Some(j) = flag {
        return j.max(1);
    }
    if let Ok(env) = std::env::var("QSUM_JOBS") {
        if let Ok(j) = env.parse::<usize>() {
            return j.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn run(cli: Cli) -> Result<i32, UsageError> {
    let jobs = resolve_jobs(cli.common.jobs);
    let start = Instant::now();
    let sink: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| format!("cannot open {}: {e}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout())),
    };
    let mut emitter = Emitter::new(sink, cli.common.format, cli.common.timings, cli.common.seed);

    let reports_in_order: Option<Vec<_>> = match &cli.command {
        Command::Proofchain { n, m1, m2 } => {
            Some(cases::run_proofchain(*n, *m1, *m2, cli.common.truncation)?)
        }
        _ => None,
    };
    if let Some(reports) = reports_in_order {
        for rep in &reports {
            emitter.emit(rep)?;
        }
    } else {
        let case_list = build_cases(&cli)?;
        run_cases(&case_list, jobs, cli.common.seed, &mut emitter)?;
    }

    emitter.finish(start.elapsed().as_millis() as u64)?;
    Ok(emitter.exit_code())
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), UsageError> {
    if cond {
        Ok(())
    } else {
        Err(UsageError(msg.into()))
    }
}

fn range_values(r: &RangeArg) -> Vec<i64> {
    r.iter().collect()
}

fn build_cases(cli: &Cli) -> Result<Vec<Case>, UsageError> {
    let trunc = cli.common.truncation;
    let mut out = Vec::new();
    match &cli.command {
        Command::Proofchain { .. } => unreachable!("handled by the caller"),
        Command::Verify { target } => match target {
            VerifyTarget::Theorem { n, m1, m2, s } => {
                let p = TheoremParams::new(*n, *m1, *m2, *s).map_err(|e| e.to_string())?;
                out.push(Case::Theorem(p));
            }
            VerifyTarget::Conjecture { n, m, m1, m2, s1, s2 } => {
                let p = ConjectureParams::new(*n, *m, *m1, *m2, *s1, *s2)
                    .map_err(|e| e.to_string())?;
                out.push(Case::Conjecture(p));
            }
        },
        Command::Sweep { target } => match target {
            SweepTarget::Theorem { n, m1, m2, s } => {
                check(n.lo >= 1, "n must be positive")?;
                check(m1.lo >= 0 && m2.lo >= 0, "M1, M2 must be nonnegative")?;
                for n in range_values(n) {
                    for m1 in range_values(m1) {
                        for m2 in range_values(m2) {
                            let (lo, hi) = match s {
                                Some(r) => (r.lo.max(-m1), r.hi.min(m2)),
                                None => (-m1, m2),
                            };
                            for s in lo..=hi {
                                let p = TheoremParams::new(n, m1, m2, s)
                                    .map_err(|e| e.to_string())?;
                                out.push(Case::Theorem(p));
                            }
                        }
                    }
                }
            }
            SweepTarget::Conjecture { n, m, m1, m2, s1, s2 } => {
                check(n.lo >= 1 && m.lo >= 1, "n, m must be positive")?;
                check(m1.lo >= 0 && m2.lo >= 0, "M1, M2 must be nonnegative")?;
                for n in range_values(n) {
                    for m in range_values(m) {
                        for m1 in range_values(m1) {
                            for m2 in range_values(m2) {
                                let (lo1, hi1) = match s1 {
                                    Some(r) => (r.lo.max(-m1), r.hi.min(m2)),
                                    None => (-m1, m2),
                                };
                                let (lo2, hi2) = match s2 {
                                    Some(r) => (r.lo.max(-m1), r.hi.min(m2)),
                                    None => (-m1, m2),
                                };
                                for s1 in lo1..=hi1 {
                                    for s2 in lo2..=hi2 {
                                        let p =
                                            ConjectureParams::new(n, m, m1, m2, s1, s2)
                                                .map_err(|e| e.to_string())?;
                                        out.push(Case::Conjecture(p));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        },
        Command::Proofstep { step } => build_proofstep_cases(step, trunc, &mut out)?,
    }
    Ok(out)
}

fn require_divides(n: i64, m1: i64, m2: i64) -> Result<(), UsageError> {
    check(n >= 1, "n must be positive")?;
    check(m1 >= 0 && m2 >= 0, "M1, M2 must be nonnegative")?;
    check(m1 % n == 0, format!("n={n} must divide M1={m1}"))?;
    check(m2 % n == 0, format!("n={n} must divide M2={m2}"))
}

fn build_proofstep_cases(
    step: &ProofStep,
    trunc: Option<i64>,
    out: &mut Vec<Case>,
) -> Result<(), UsageError> {
    match step {
        ProofStep::Eq2 { n, m1, m2 } => {
            check(*n >= 1 && *m1 >= 0 && *m2 >= 0, "invalid parameters")?;
            out.push(Case::Eq2 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Eq3 { n, m1, m2 } => {
            check(*n >= 1 && *m1 >= 0 && *m2 >= 0, "invalid parameters")?;
            check(*m1 % *n == 0, format!("n={n} must divide M1={m1}"))?;
            out.push(Case::Eq3 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Milne { l, n_cap, points } => {
            check(*l >= 1, "dimension l must be positive")?;
            check(*n_cap >= 0, "termination bound must be nonnegative")?;
            for index in 0..*points {
                out.push(Case::MilnePoint {
                    l: *l,
                    n_cap: *n_cap,
                    big_m: 0,
                    mod_form: false,
                    index,
                });
            }
        }
        ProofStep::MilneMod { l, n_cap, big_m, points } => {
            check(*l >= 1, "dimension l must be positive")?;
            check(*n_cap >= 0 && *big_m >= 0, "bounds must be nonnegative")?;
            for index in 0..*points {
                out.push(Case::MilnePoint {
                    l: *l,
                    n_cap: *n_cap,
                    big_m: *big_m,
                    mod_form: true,
                    index,
                });
            }
        }
        ProofStep::MilneLim { n, m1, m2 } => {
            require_divides(*n, *m1, *m2)?;
            out.push(Case::MilneLim { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Eq4 { n, m1, m2 } => {
            require_divides(*n, *m1, *m2)?;
            out.push(Case::Eq4 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Vandermonde { n, k, count } => {
            check(*n >= 1, "n must be positive")?;
            match k {
                Some(k) => {
                    check(
                        k.len() as i64 == *n - 1,
                        format!("composition must have n-1 = {} parts", n - 1),
                    )?;
                    out.push(Case::VandermondeGiven { n: *n, k: k.clone() });
                }
                None => {
                    for index in 0..*count {
                        out.push(Case::VandermondePoint { n: *n, index });
                    }
                }
            }
        }
        ProofStep::Eq5 { n, m1, m2 } => {
            require_divides(*n, *m1, *m2)?;
            check(*n - 1 <= 7, "permutation expansion bound: n-1 <= 7")?;
            out.push(Case::Eq5 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Psi1 { a_pow, b_pow, z_pow, ell, n } => {
            check(*a_pow >= 0, "termination order N must be nonnegative")?;
            check(*b_pow >= 1, "lower exponent B must be at least 1")?;
            check(*n >= 1, "root-of-unity order must be positive")?;
            out.push(Case::Psi1 {
                a_pow: *a_pow,
                b_pow: *b_pow,
                z_pow: *z_pow,
                ell: *ell,
                n: *n,
                trunc: trunc.unwrap_or(16),
            });
        }
        ProofStep::Eq6 { n, m1, m2 } => {
            require_divides(*n, *m1, *m2)?;
            out.push(Case::Eq6 { n: *n, m1: *m1, m2: *m2, trunc });
        }
        ProofStep::Eq7 { n, m1, m2 } => {
            require_divides(*n, *m1, *m2)?;
            out.push(Case::Eq7 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Cancel { n, m1, m2 } => {
            check(*n >= 1 && *m1 >= 0 && *m2 >= 0, "invalid parameters")?;
            out.push(Case::Cancel { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Detlemma { size, instances } => {
            check(size.lo >= 1, "matrix size must be positive")?;
            check(size.hi <= 8, "cofactor expansion bound: size <= 8")?;
            for size in size.iter() {
                for index in 0..*instances {
                    out.push(Case::DetPoint {
                        size: size as usize,
                        index,
                    });
                }
            }
        }
        ProofStep::Eq8 { n, m1, m2 } => {
            check(*n >= 1 && *m1 >= 0 && *m2 >= 0, "invalid parameters")?;
            check(*n - 1 <= 6, "determinant size bound: n-1 <= 6")?;
            out.push(Case::Eq8 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Eq9 { n, m1, m2 } => {
            require_divides(*n, *m1, *m2)?;
            out.push(Case::Eq9 { n: *n, m1: *m1, m2: *m2 });
        }
        ProofStep::Cyclo { n } => {
            check(n.lo >= 2, "the product identities need n >= 2")?;
            for n in n.iter() {
                out.push(Case::Cyclo { n });
            }
        }
    }
    Ok(())
}
