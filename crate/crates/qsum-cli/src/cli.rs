//! Command-line surface: subcommands, flags, and the inclusive-range
//! argument type used by sweeps.

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

/// Inclusive integer range, written `A..B`, or a single value `A`.
#[derive(Debug, Clone, Copy)]
pub struct RangeArg {
    pub lo: i64,
    pub hi: i64,
}

impl RangeArg {
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for RangeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        // split on the first ".." that is not a leading minus sign
        if let Some(pos) = s[1.min(s.len())..].find("..").map(|p| p + 1.min(s.len())) {
            let lo: i64 = s[..pos].parse().map_err(|e| format!("bad range start: {e}"))?;
            let hi: i64 = s[pos + 2..]
                .parse()
                .map_err(|e| format!("bad range end: {e}"))?;
            if lo > hi {
                return Err(format!("empty range {lo}..{hi}"));
            }
            Ok(RangeArg { lo, hi })
        } else {
            let v: i64 = s.parse().map_err(|e| format!("bad integer: {e}"))?;
            Ok(RangeArg { lo: v, hi: v })
        }
    }
}

impl fmt::Display for RangeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ndjson,
    Summary,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// Seed for the deterministic samplers.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads (default: logical cores; QSUM_JOBS overrides the
    /// default, the flag overrides both).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Truncation order for series-side checks (default n^2(n+M2)+10).
    #[arg(long, global = true)]
    pub truncation: Option<i64>,
    /// Write reports to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Ndjson)]
    pub format: Format,
    /// Include wall-clock timings in NDJSON records. Off by default so
    /// that identical invocations produce byte-identical output.
    #[arg(long, global = true, default_value_t = false)]
    pub timings: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "qsum",
    about = "Exact verification engine for a family of multidimensional q-series summation and transformation identities",
    version
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a single identity instance.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Sweep a parameter grid with parallel workers.
    Sweep {
        #[command(subcommand)]
        target: SweepTarget,
    },
    /// Check one intermediate step of the proof pipeline.
    Proofstep {
        #[command(subcommand)]
        step: ProofStep,
    },
    /// Run every step of the proof pipeline for one (n, M1, M2).
    Proofchain {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyTarget {
    /// The summation identity at one parameter point.
    Theorem {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
        #[arg(long)]
        s: i64,
    },
    /// The transformation identity at one parameter point.
    Conjecture {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
        #[arg(long)]
        s1: i64,
        #[arg(long)]
        s2: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SweepTarget {
    /// All (n, M1, M2, S) in the given inclusive ranges; S defaults to the
    /// full valid range [-M1, M2].
    Theorem {
        #[arg(long)]
        n: RangeArg,
        #[arg(long)]
        m1: RangeArg,
        #[arg(long)]
        m2: RangeArg,
        #[arg(long)]
        s: Option<RangeArg>,
    },
    /// All (n, m, M1, M2, S1, S2); S1, S2 default to the full valid range.
    Conjecture {
        #[arg(long)]
        n: RangeArg,
        #[arg(long)]
        m: RangeArg,
        #[arg(long)]
        m1: RangeArg,
        #[arg(long)]
        m2: RangeArg,
        #[arg(long)]
        s1: Option<RangeArg>,
        #[arg(long)]
        s2: Option<RangeArg>,
    },
}

#[derive(Debug, Subcommand)]
#[allow(clippy::enum_variant_names)]
pub enum ProofStep {
    /// Cleared polynomial form of the S = 0 identity.
    Eq2 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Index-shifted rewriting (requires n | M1).
    Eq3 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Watson-type transformation at seeded rational points.
    Milne {
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Upper bound for the termination orders N_i.
        #[arg(long, default_value_t = 2)]
        n_cap: i64,
        #[arg(long, default_value_t = 25)]
        points: u64,
    },
    /// Rearranged transformation with the distinguished parameter
    /// substituted out, at seeded rational points.
    MilneMod {
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 2)]
        n_cap: i64,
        /// Box size M of the rearranged form.
        #[arg(long, default_value_t = 2)]
        big_m: i64,
        #[arg(long, default_value_t = 25)]
        points: u64,
    },
    /// Limit case of the transformation, exact in q.
    MilneLim {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Entangled expression for the S = 0 left-hand side.
    Eq4 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Vandermonde determinant rewrite of the difference product, on
    /// seeded random compositions or one given composition.
    Vandermonde {
        #[arg(long)]
        n: i64,
        /// Explicit composition, comma separated, length n-1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Option<Vec<i64>>,
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Permutation-split form of the entangled sum.
    Eq5 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Bilateral summation at a root-of-unity specialization.
    Psi1 {
        /// Termination order N in a = q^-N.
        #[arg(long)]
        a_pow: i64,
        /// Exponent B in b = q^B.
        #[arg(long)]
        b_pow: i64,
        /// Exponent Z in z = w^ell q^Z.
        #[arg(long)]
        z_pow: i64,
        #[arg(long)]
        ell: i64,
        /// Order n of the root of unity.
        #[arg(long)]
        n: i64,
    },
    /// Root-of-unity section form, certified to the truncation order.
    Eq6 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Finite-product collapse with a rationality check.
    Eq7 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Repeated-root-index cancellation.
    Cancel {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Determinant lemma on seeded rational instances.
    Detlemma {
        #[arg(long, default_value = "1..6")]
        size: RangeArg,
        #[arg(long, default_value_t = 10)]
        instances: u64,
    },
    /// Determinant evaluation inside the pipeline.
    Eq8 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Closing Vandermonde evaluation and reduction to the right-hand
    /// side.
    Eq9 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
    },
    /// Root-of-unity product identities.
    Cyclo {
        #[arg(long, default_value = "2..12")]
        n: RangeArg,
    },
}
