use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "cayleyrf",
    version,
    about = "k-local split distances between random labeled trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write uniformly random trees in the tree text format.
    Gen(GenArgs),
    /// Print the k-RF distance between trees read from two files.
    Dist(DistArgs),
    /// Exact laws and counts by formula and by enumeration.
    Exact(ExactArgs),
    /// Run a Monte Carlo experiment and write its report.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long, env = "CAYLEYRF_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, env = "CAYLEYRF_FORMAT")]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenArgs {
    #[arg(long, env = "CAYLEYRF_N")]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, env = "CAYLEYRF_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DistArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[arg(long, env = "CAYLEYRF_K", default_value_t = 0)]
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactStat {
    /// Law of shared edges (0-local splits).
    SharedEdges,
    /// Law of shared k-local splits.
    SharedSplits,
    /// Law of vertices that are leaves in both trees.
    SharedLeaves,
    /// Law of the k-RF distance.
    Distance,
    /// Law of the leaf count of one tree.
    LeafCount,
    /// Trees containing a spanning forest (`--forest`).
    Moon,
    /// Trees containing a fixed type-1 split (`--k`).
    Type1Count,
    /// Trees containing a fixed type-2 split (`--l`, `--k`).
    Type2Count,
    /// Ordered forests with `--k` trees.
    OrderedForests,
    /// Labeled 1-local split shapes (`--k`, optional `--l`).
    SplitShapes,
    /// Factorial moment of order `--k` of the shared-leaf count.
    FactorialMoment,
    /// Expected shared full splits with a side of size `--k`.
    Bipartitions,
    /// Explicit Poisson total-variation bound for shared edges.
    SteinChen,
    /// Probability both trees contain a singleton split (`--radius`).
    Singleton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingletonArg {
    Full,
    BelowFull,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExactArgs {
    #[arg(long, value_enum)]
    pub stat: ExactStat,
    #[arg(long, env = "CAYLEYRF_N")]
    pub n: usize,
    #[arg(long, env = "CAYLEYRF_K")]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Forest as `;`-separated components, e.g. `1-2;3;4`.
    #[arg(long)]
    pub forest: Option<String>,
    #[arg(long, value_enum, default_value = "full")]
    pub radius: SingletonArg,
    /// Largest n to enumerate, overriding the built-in cap for this statistic.
    #[arg(long, env = "CAYLEYRF_CAP")]
    pub cap: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    #[value(name = "poisson-0rf")]
    Poisson0rf,
    #[value(name = "clt-n2rf")]
    CltN2rf,
    N3rf,
    OneRf,
    OneRfRate,
    FixedTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpponentArg {
    RandomTree,
    RandomPairSet,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    #[arg(long, env = "CAYLEYRF_N", default_value_t = 100)]
    pub n: usize,
    #[arg(long, env = "CAYLEYRF_TRIALS", default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, env = "CAYLEYRF_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, env = "CAYLEYRF_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Fixed tree for `fixed-tree` (first record of the file); a star
    /// centred at 1 on `--n` vertices when absent.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "random-tree")]
    pub mode: OpponentArg,
    /// Sizes for `one-rf-rate`, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [50, 100, 200])]
    pub sizes: Vec<usize>,
    /// Record the wall-clock time in the report.
    #[arg(long)]
    pub timestamp: bool,
    #[command(flatten)]
    pub common: Common,
}

/// Everything needed to reproduce a run, embedded in each report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub experiment: String,
    pub n: usize,
    pub k: Option<usize>,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub cap: Option<usize>,
    pub tree: Option<PathBuf>,
    pub mode: OpponentArg,
    pub sizes: Vec<usize>,
}

impl RunConfig {
    pub fn for_experiment(args: &ExperimentArgs, k: Option<usize>) -> Self {
        let name = args
            .name
            .to_possible_value()
            .expect("named variant")
            .get_name()
            .to_string();
        RunConfig {
            command: "experiment",
            experiment: name,
            n: args.n,
            k,
            trials: args.trials,
            seed: args.seed,
            workers: args.workers,
            out: args.common.out.clone(),
            format: args.common.format.unwrap_or(Format::Json),
            cap: None,
            tree: args.tree.clone(),
            mode: args.mode,
            sizes: args.sizes.clone(),
        }
    }
}
