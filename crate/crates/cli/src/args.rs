use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ucfreq::verifier::KRange;

#[derive(Debug, Parser)]
#[command(
    name = "ucfreq",
    version,
    about = "Frequencies, entropy bounds and certificates for union-closed families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a named family.
    Construct {
        #[command(subcommand)]
        family: Construction,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
        format: OutputFormat,
    },
    /// Summarize a family at a given k as JSON.
    Analyze {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        k: usize,
    },
    /// Size bounds implied by a maximum frequency alpha.
    Bounds {
        /// A fraction like 1/9 or a decimal like 0.3.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        k: usize,
    },
    /// Minimal k-good set with witnesses and the frequency bounds it implies.
    GoodSet {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        k: usize,
    },
    /// Check every union-closed family on [n].
    Verify {
        #[arg(long)]
        n: usize,
        /// An integer, or `all` for every k from 2 to the support size.
        #[arg(long, value_parser = parse_k_range)]
        k: KRange,
        /// Enumerate only families that already contain the empty set.
        #[arg(long)]
        require_empty: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Stop after this many seconds and report a partial sweep.
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Include wall-clock statistics in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Check random union-closed families generated from a seed.
    RandomCheck {
        #[arg(long)]
        n: usize,
        /// Random generating sets per family.
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// 2^[k-1] together with [k-1] ∪ extra.
    NearKCube {
        #[arg(long)]
        k: usize,
        /// Elements added to [k-1] in the top set, e.g. "4 5". Defaults to {k}.
        #[arg(long)]
        extra: Option<String>,
    },
    /// Every subset of [d].
    PowerCube {
        #[arg(long)]
        d: usize,
    },
    /// Direct sum of family files, relabeled onto consecutive element ranges.
    DirectSum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// k - 1 copies of {∅} ∪ {F ⊆ [n+1] : 1 ∈ F} on disjoint ground sets.
    NagelExample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FamilyInput {
    /// Family file in the text or JSON format.
    pub file: Option<PathBuf>,
    /// Family given on the command line; `;` may stand in for newlines.
    #[arg(long)]
    pub inline: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

fn parse_k_range(value: &str) -> Result<KRange, String> {
    if value.eq_ignore_ascii_case("all") {
        return Ok(KRange::All);
    }
    match value.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(KRange::Single(k)),
        _ => Err(format!(
            "expected a positive integer or `all`, got `{value}`"
        )),
    }
}
