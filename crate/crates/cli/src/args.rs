use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::generators::GeneratorSpec;
use crate::oeis::ANumber;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "comma", version, about = "Comma sequences in any base: run, classify, explore, verify")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Where downloaded b-files are kept.
    #[arg(long, global = true, env = "COMMA_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Serve b-files from the cache only.
    #[arg(long, global = true, env = "COMMA_OFFLINE")]
    pub offline: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the comma sequence from a start value.
    Run(RunArgs),
    /// Describe one number's place in the successor and child graphs.
    Classify {
        #[arg(long, default_value_t = 10)]
        base: u64,
        n: BigUint,
    },
    /// Numbers with no comma-child, up to a bound.
    Landmines {
        #[arg(long, default_value_t = 10)]
        base: u64,
        #[arg(long)]
        max: BigUint,
    },
    /// Numbers with two comma-children, up to a bound.
    BranchPoints {
        #[arg(long, default_value_t = 10)]
        base: u64,
        #[arg(long)]
        max: BigUint,
    },
    /// Follow the child graph with explicit branch choices.
    Path(PathArgs),
    /// Walk every branch of the child-graph tree below a root.
    Explore(ExploreArgs),
    /// Comma transform of integers read from a file or stdin.
    Transform {
        #[arg(long, default_value_t = 10)]
        base: u64,
        /// File of whitespace-separated integers, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Checks of the base-3 structure.
    #[command(subcommand)]
    Base3(Base3Command),
    /// Death counts of the survival model against the generating function.
    Kangaroo {
        /// Inclusive range such as `2..24`.
        #[arg(long, value_parser = parse_range, default_value = "2..24")]
        bases: (u64, u64),
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Fail unless every count matches the series.
        #[arg(long)]
        check_gf: bool,
    },
    /// Compare a built-in generator with an OEIS b-file.
    Verify {
        #[arg(long)]
        oeis: ANumber,
        /// e.g. `run:base=10,start=1`, `landmines:base=10`, `transform:from=0`.
        #[arg(long)]
        generator: GeneratorSpec,
        /// Compare at most this many b-file entries.
        #[arg(long)]
        limit: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Summary,
    Terms,
    Commas,
    RatioSeries,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 10)]
    pub base: u64,
    #[arg(long)]
    pub start: BigUint,
    /// One successor computation per term instead of jumping.
    #[arg(long)]
    pub naive: bool,
    #[arg(long)]
    pub max_terms: Option<BigUint>,
    /// Stop at the first term at or above this value.
    #[arg(long)]
    pub max_value: Option<BigUint>,
    #[arg(long, value_enum, default_value_t = Emit::Summary)]
    pub emit: Emit,
    /// Points in the ratio series (log-spaced).
    #[arg(long, default_value_t = 4096)]
    pub points: usize,
    /// Print terms as base-b digit strings.
    #[arg(long)]
    pub digits: bool,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long, default_value_t = 10)]
    pub base: u64,
    #[arg(long, required_unless_present = "infinite", conflicts_with = "infinite")]
    pub start: Option<BigUint>,
    /// `0` takes the lower child at a branch-point, `1` the higher.
    #[arg(long, required_unless_present = "infinite", conflicts_with = "infinite")]
    pub choices: Option<String>,
    /// Stream the base-3 infinite path from 1.
    #[arg(long, requires = "count")]
    pub infinite: bool,
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long)]
    pub max_terms: Option<BigUint>,
    #[arg(long)]
    pub max_value: Option<BigUint>,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long, default_value_t = 10)]
    pub base: u64,
    #[arg(long)]
    pub root: BigUint,
    /// Follow every branch with no value ceiling. Root 30 in base 10 ends
    /// after 1008 leaves, the longest about 2·10^363 terms; under a second.
    #[arg(long, conflicts_with = "depth")]
    pub stretch: bool,
    /// Stop live paths after this many branch choices.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Without --stretch or --depth, abandon paths past this many digits.
    #[arg(long, default_value_t = 64)]
    pub max_digits: u32,
    /// Print only the longest path.
    #[arg(long)]
    pub longest: bool,
}

#[derive(Debug, Subcommand)]
pub enum Base3Command {
    /// Predicted comma-numbers against the real ones for every n <= limit.
    VerifyPredictor {
        #[arg(long, default_value_t = 59049)]
        limit: u64,
    },
    /// The transition table against real runs for h <= h-max.
    VerifyTransitions {
        #[arg(long, default_value_t = 5)]
        h_max: u32,
    },
    /// Every start <= x-max ends at some 3^h - 5.
    Terminate {
        #[arg(long, default_value_t = 2187)]
        x_max: u64,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: u64 = hi.parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}
