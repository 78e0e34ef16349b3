//! Command-line grammar and the small value parsers it needs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crs_core::exact::{parse_rational, BigRational};
use crs_core::verify::{SequenceVariant, Suite};

// Aliases keep clap from treating these as repeated flags: each one is a
// single argument parsed into a whole list.
pub type U64List = Vec<u64>;
pub type U32List = Vec<u32>;
pub type RationalList = Vec<BigRational>;
pub type VariantList = Vec<SequenceVariant>;

#[derive(Debug, Parser)]
#[command(
    name = "crs-lab",
    version,
    about = "Exact Cohen-Ramanujan sums, weighted averages and theorem checks"
)]
pub struct Cli {
    /// Worker threads for sweeps and suites (default: all cores). Output
    /// does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a single exact value.
    #[command(subcommand)]
    Compute(ComputeTarget),
    /// Sweep a parameter grid into CSV or JSON.
    #[command(subcommand)]
    Table(TableTarget),
    /// Run a verification suite and emit its reports.
    Verify(VerifyArgs),
    /// Tabulate a sequence k_n with W(k_n, r, s) and its gap to the limit.
    Seq(SeqArgs),
}

#[derive(Debug, Subcommand)]
pub enum ComputeTarget {
    /// c_k^(s)(j)
    Crs {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        j: u64,
    },
    /// W(k, r, s)
    Weighted {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableTarget {
    /// Columns k,s,j,value,d,gcd_s.
    Crs(CrsTableArgs),
    /// Columns k,r,s,value,leading,bernoulli_tail,delta_correction.
    Weighted(WeightedTableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CrsTableArgs {
    /// Values of k, e.g. `1..3` or `2,5,7`. Overrides --k-max.
    #[arg(long, value_parser = parse_list::<u64>)]
    pub k: Option<U64List>,
    /// Shorthand for `--k 1..K`.
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long, value_parser = parse_list::<u32>, default_value = "1")]
    pub s: U32List,
    /// Values of j; defaults to the full period 1..k^s.
    #[arg(long, value_parser = parse_list::<u64>)]
    pub j: Option<U64List>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WeightedTableArgs {
    #[arg(long, value_parser = parse_list::<u64>)]
    pub k: Option<U64List>,
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long, value_parser = parse_list::<u32>)]
    pub r: Option<U32List>,
    #[arg(long)]
    pub r_max: Option<u32>,
    #[arg(long, value_parser = parse_list::<u32>, default_value = "1")]
    pub s: U32List,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// thm31, thm32, thm33, thm34, corollary, identities or all.
    #[arg(value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, value_parser = parse_list::<u64>)]
    pub k: Option<U64List>,
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long, value_parser = parse_list::<u32>)]
    pub r: Option<U32List>,
    #[arg(long)]
    pub r_max: Option<u32>,
    #[arg(long, value_parser = parse_list::<u32>)]
    pub s: Option<U32List>,
    /// Upper end of the average over k.
    #[arg(long)]
    pub x: Option<u64>,
    /// One or more exact rationals, e.g. `1/2,1/4`.
    #[arg(long, value_parser = parse_rational_list)]
    pub eps: Option<RationalList>,
    #[arg(long, value_parser = parse_rational_arg)]
    pub lambda: Option<BigRational>,
    #[arg(long, value_parser = parse_list::<u64>)]
    pub n: Option<U64List>,
    #[arg(long, value_parser = parse_variant_list)]
    pub variant: Option<VariantList>,
    #[arg(long, value_parser = parse_rational_arg)]
    pub tolerance: Option<BigRational>,
    /// `json` (default) emits the reports; `csv` a one-line-per-check summary.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// bounded-omega, window or window2.
    #[arg(value_parser = parse_variant)]
    pub variant: SequenceVariant,
    #[arg(long, value_parser = parse_rational_arg, default_value = "2")]
    pub lambda: BigRational,
    #[arg(long, value_parser = parse_list::<u64>)]
    pub n: U64List,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub s: u32,
    /// Used for the `converged` flag in JSON output.
    #[arg(long, value_parser = parse_rational_arg, default_value = "1/20")]
    pub tolerance: BigRational,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// `a..b` (inclusive), `a..=b`, `a`, or comma-separated mixtures of these.
/// A range with `b < a` is empty.
pub fn parse_list<T>(text: &str) -> Result<Vec<T>, String>
where
    T: TryFrom<u64>,
{
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let one = |t: &str| -> Result<u64, String> {
            t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"))
        };
        let (lo, hi) = match part.split_once("..") {
            Some((a, b)) => (one(a)?, one(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = one(part)?;
                (v, v)
            }
        };
        for v in lo..=hi {
            out.push(T::try_from(v).map_err(|_| format!("{v} is out of range"))?);
        }
    }
    Ok(out)
}

fn parse_rational_arg(text: &str) -> Result<BigRational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, String> {
    text.split(',').map(parse_rational_arg).collect()
}

fn parse_suite(text: &str) -> Result<Suite, String> {
    text.parse().map_err(|e: crs_core::Error| e.to_string())
}

fn parse_variant(text: &str) -> Result<SequenceVariant, String> {
    text.parse().map_err(|e: crs_core::Error| e.to_string())
}

fn parse_variant_list(text: &str) -> Result<Vec<SequenceVariant>, String> {
    text.split(',').map(|t| parse_variant(t.trim())).collect()
}

/// `explicit`, else `1..=max`, else an error naming the missing flags.
pub fn resolve<T: Copy + TryFrom<u64>>(
    explicit: &Option<Vec<T>>,
    max: Option<u64>,
    name: &str,
) -> anyhow::Result<Vec<T>> {
    match (explicit, max) {
        (Some(list), _) => Ok(list.clone()),
        (None, Some(max)) => parse_list(&format!("1..{max}")).map_err(anyhow::Error::msg),
        (None, None) => anyhow::bail!("one of --{name} or --{name}-max is required"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_forms() {
        assert_eq!(parse_list::<u64>("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_list::<u64>("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_list::<u64>("2,5, 7").unwrap(), vec![2, 5, 7]);
        assert_eq!(parse_list::<u32>("4").unwrap(), vec![4]);
        assert_eq!(parse_list::<u64>("1..2,9").unwrap(), vec![1, 2, 9]);
        assert!(parse_list::<u64>("3..2").unwrap().is_empty());
        assert!(parse_list::<u64>("x").is_err());
        assert!(parse_list::<u32>("5000000000").is_err());
    }
}
