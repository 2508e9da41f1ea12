use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "zelist",
    version,
    about = "Random zero-error list codes: functionals, bounds, simulation and exact oracles"
)]
pub struct Cli {
    /// Worker threads for parallel routines (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between channels and distinguishability hypergraphs.
    #[command(subcommand)]
    Channel(ChannelCmd),
    /// Rényi entropy, I and every θ for one (G, P, L).
    Measures(MeasuresArgs),
    /// Zero-error list codes.
    #[command(subcommand)]
    Codes(CodesCmd),
    /// Noiseless (identity-channel) multicollision probabilities.
    #[command(subcommand)]
    Birthday(BirthdayCmd),
    /// Graph entropies.
    #[command(subcommand)]
    Entropy(EntropyCmd),
    /// Full sweep: moments, bounds, Monte Carlo and exact values per (n, M).
    Run(RunArgs),
}

#[derive(Debug, Subcommand)]
pub enum ChannelCmd {
    /// Distinguishability hypergraph of a channel.
    Graph {
        #[arg(long)]
        channel: PathBuf,
    },
    /// A channel whose distinguishability hypergraph is the given one.
    FromGraph {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Channel matrix (JSON, or CSV with a header of output labels).
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    pub channel: Option<PathBuf>,
    /// Hypergraph JSON: {"vertices", "edges", "upward_closed"}.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Input distribution JSON: {"probs": [...]}.
    #[arg(long)]
    pub probs: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Naive,
    Ix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct MeasuresArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(short = 'L', long = "list-size")]
    pub list_size: usize,
    #[arg(long, value_enum, default_value = "naive")]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(short = 'L', long = "list-size")]
    pub list_size: usize,
    /// Rates in bits; M = floor(2^(nR)).
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "messages",
        required_unless_present = "messages"
    )]
    pub rate: Vec<f64>,
    /// Message counts.
    #[arg(short = 'M', long = "messages", value_delimiter = ',')]
    pub messages: Vec<u64>,
    /// Blocklengths, `a:b` inclusive or a single `n`.
    #[arg(long = "n-range", default_value = "1")]
    pub n_range: String,
    #[arg(long, value_enum, default_value = "naive")]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Skip the exact probability.
    #[arg(long)]
    pub no_exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum CodesCmd {
    /// E[Z], E[Z²] and the resulting probability bounds.
    Bounds(SweepArgs),
    /// Monte Carlo probability that a random codebook is zero-error.
    Mc {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exact probability that a random codebook is zero-error.
    Exact(SweepArgs),
    /// Check a codebook and, for a channel, tabulate its list decoder.
    Verify {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        channel: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Codebook JSON: {"n", "words"}.
        #[arg(long)]
        code: PathBuf,
        #[arg(short = 'L', long = "list-size")]
        list_size: usize,
    },
    /// Sufficient and necessary rate thresholds.
    Rates {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'L', long = "list-size")]
        list_size: usize,
    },
}

#[derive(Debug, Args)]
pub struct OccupancyArgs {
    #[arg(long)]
    pub probs: PathBuf,
    /// Largest allowed multiplicity L.
    #[arg(long = "max-mult", short = 'L')]
    pub max_mult: u32,
}

#[derive(Debug, Subcommand)]
pub enum BirthdayCmd {
    /// Probability that M draws from Pⁿ repeat no symbol more than L times.
    Exact {
        #[command(flatten)]
        occ: OccupancyArgs,
        #[arg(long, short = 'M')]
        draws: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Least blocklength reaching probability 1 - eps.
    Nstar {
        #[command(flatten)]
        occ: OccupancyArgs,
        #[arg(long, short = 'M')]
        draws: u64,
        #[arg(long)]
        eps: f64,
    },
    /// log2 M / n*(M, eps) for several M.
    Curve {
        #[command(flatten)]
        occ: OccupancyArgs,
        #[arg(long, short = 'M', value_delimiter = ',', required = true)]
        draws: Vec<u64>,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum EntropyCmd {
    /// I_2, H_2 and H_1 for a graph, checking I_2 ≤ H_2 ≤ H_1.
    Chain {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        probs: PathBuf,
    },
    /// Clique number against the Motzkin–Straus witness and Turán bound.
    Clique {
        #[arg(long)]
        graph: PathBuf,
    },
}
