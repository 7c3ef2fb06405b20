use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sundial_core::DEFAULT_PRIME;

/// Inclusive integer range written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: u64,
    pub end: u64,
}

impl IntRange {
    pub fn single(v: u64) -> Self {
        IntRange { start: v, end: v }
    }

    pub fn iter(&self) -> RangeInclusive<u64> {
        self.start..=self.end
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad bound {x:?}: {e}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { start, end })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Tsv,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Record wall-clock milliseconds (otherwise `elapsed_ms` is 0 so that
    /// reports are byte-identical across runs).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Field {
    /// Characteristic of the coefficient field.
    #[arg(long, default_value_t = DEFAULT_PRIME as u64)]
    pub prime: u64,
    /// Seed for every random configuration.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(
    name = "hilbert-sundial",
    version,
    about = "Exact Hilbert functions of unions of lines and sundials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare dim (I_X)_d for s random sundials and l random lines with the
    /// bipolynomial prediction.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, alias = "s", default_value_t = 0)]
        sundials: u64,
        #[arg(long, alias = "l", default_value_t = 0)]
        lines: u64,
        /// Trials before giving up on a mismatch.
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        output: Output,
    },
    /// Run `verify` over every (n, d) in the ranges and every (s, l) with
    /// 2s + l <= t + 1.
    Sweep {
        #[arg(long, default_value = "3..5")]
        n: IntRange,
        #[arg(long, default_value = "1..6")]
        d: IntRange,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        output: Output,
    },
    /// Check the auxiliary inequalities of the P^n induction over a grid.
    Appendix {
        #[arg(long, default_value = "4..12")]
        n: IntRange,
        #[arg(long, default_value = "2..50")]
        d: IntRange,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute every dimension claimed in one step of the induction.
    Replay {
        /// `H CASE`: the quadric argument in P^3 (case 1: d = 3h, 2: d = 3h+2, 3: d = 3h+1).
        #[arg(long, num_args = 2, value_names = ["H", "CASE"], conflicts_with = "pn", required_unless_present = "pn")]
        p3: Option<Vec<u32>>,
        /// `N D`: the hyperplane argument in P^N.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        pn: Option<Vec<u32>>,
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        output: Output,
    },
    /// Castelnuovo's inequality on random unions and random hyperplanes.
    Castelnuovo {
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        random: u32,
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        output: Output,
    },
    /// Hilbert function along the family degenerating two skew lines to a
    /// sundial.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        /// Random nonzero parameters besides the special fibre.
        #[arg(long, default_value_t = 4)]
        lambdas: u32,
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        output: Output,
    },
    /// dim (I_X)_d for a scheme given in a JSON description file.
    Dim {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        d: u32,
        /// Used when the file does not name a prime.
        #[arg(long, default_value_t = DEFAULT_PRIME as u64)]
        prime: u64,
        #[command(flatten)]
        output: Output,
    },
}
