use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{LabError, LabResult};

#[derive(Debug, Parser)]
#[command(name = "nonarch-lab", version, about = "Exact checks for points of bounded height and p-adic parametrizations")]
pub struct Cli {
    /// Worker threads (NONARCH_LAB_THREADS takes precedence).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a CSV summary.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Seed for randomized strategies; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant-method constants for (m, n, d) and the exponent α(T, p).
    Bounds(BoundsArgs),
    /// Points of bounded height on a semialgebraic set.
    Heights(HeightsArgs),
    /// Decide T_r for a polynomial map.
    TaylorCheck(TaylorArgs),
    /// Cover integer points of a curve by auxiliary hypersurfaces.
    DetCover(DetCoverArgs),
    /// Count F_q[t]/t^r points and fit δ.
    CountFf(CountFfArgs),
    /// Expand a variety into equations over F_q for X_r.
    ExpandScheme(ExpandArgs),
    /// Hilbert function, σ sums and the (δ, α) selection.
    Hilbert(HilbertArgs),
    /// Rerun a directory of golden cases and diff the reports.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long = "T")]
    pub t: u64,
    #[arg(long)]
    pub p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HeightMode {
    /// Rational coordinates, X(Q, T).
    Q,
    /// Integer coordinates, X(Z, T).
    Z,
    /// Polynomial height of degree ≤ k, X(k, T) ∩ Q^n.
    K,
}

#[derive(Debug, Args)]
pub struct HeightsArgs {
    pub input: PathBuf,
    #[arg(long = "T")]
    pub t: u64,
    #[arg(long, value_enum, default_value_t = HeightMode::Q)]
    pub mode: HeightMode,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1 << 24)]
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    Residual,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Debug, Args)]
pub struct TaylorArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = StrategyKind::Residual)]
    pub strategy: StrategyKind,
    /// p-adic digits per coordinate for exhaustive and sampled checks.
    #[arg(long, default_value_t = 4)]
    pub digits: u32,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = nonarch_core::taylor::DEFAULT_CAP)]
    pub cap: u64,
    /// Treat the other verdict as an assertion failure.
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(Debug, Args)]
pub struct DetCoverArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 1 << 24)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct CountFfArgs {
    pub input: PathBuf,
    /// Field sizes, e.g. `2,3` or `2..7` (primes only).
    #[arg(long)]
    pub q: String,
    /// Truncation orders, e.g. `1..4`.
    #[arg(long)]
    pub r: String,
    #[arg(long, default_value_t = nonarch_core::ffcount::DEFAULT_CAP)]
    pub cap: u64,
    /// Largest δ tried by the fit (default r·n).
    #[arg(long)]
    pub max_delta: Option<u32>,
    /// Largest slack constant C accepted for the fit.
    #[arg(long, default_value_t = 10)]
    pub slack: u64,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub r: u32,
    /// Also count solutions of the expansion and compare with direct enumeration.
    #[arg(long)]
    pub count: bool,
    #[arg(long, default_value_t = nonarch_core::ffcount::DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub smax: u32,
    /// Run the (δ, α) selection for degree d and order r.
    #[arg(long, num_args = 2, value_names = ["D", "R"])]
    pub select: Option<Vec<u32>>,
    /// Check the σ-ratio bound m/(m+1) + 2/s at every s in 1..=smax.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = nonarch_core::hilbert::DEFAULT_PAIR_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = nonarch_core::hilbert::DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
    /// Largest δ scanned by --select.
    #[arg(long, default_value_t = 64)]
    pub scan_cap: u32,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    pub dir: PathBuf,
    /// Rewrite expected reports instead of comparing.
    #[arg(long)]
    pub bless: bool,
}

/// Parses `a`, `a..b` (inclusive) and comma-separated mixtures, sorted and deduplicated.
pub fn parse_list(s: &str) -> LabResult<Vec<u64>> {
    let bad = || LabError::config(format!("bad list {s:?}; expected e.g. 2,3 or 1..4"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                if b - a > 1 << 16 {
                    return Err(LabError::config(format!("range {part} is too long")));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("2,3").unwrap(), vec![2, 3]);
        assert_eq!(parse_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_list("5, 1..2 ,2").unwrap(), vec![1, 2, 5]);
        assert_eq!(parse_list("3..3").unwrap(), vec![3]);
        for bad in ["", "4..1", "a", "1..", ",", "1...3"] {
            assert!(parse_list(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
