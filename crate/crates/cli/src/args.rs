use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "pafo",
    version,
    about = "Preferential attachment graphs, subgraph exponents and pebble games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grow one graph and write it in pagraph v1 format.
    Generate {
        #[command(flatten)]
        run: RunArgs,
        /// Last vertex index; defaults to the largest scheduled size.
        #[arg(short, long)]
        n: Option<u32>,
    },
    /// Ordered copy counts of patterns over seeds and scheduled sizes.
    Census {
        #[command(flatten)]
        run: RunArgs,
        /// Weight log-growth fits by inverse squared standard errors (JSON output).
        #[arg(long)]
        weighted: bool,
    },
    /// Exact exponent B, optimizer count r and predicted growth of a pattern.
    Exponents {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Classify a pattern as rare, cycle or other.
    Classify {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Log-log fit of the maximum degree against n.
    Maxdeg {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Hill estimate of the degree tail exponent.
    Tail {
        #[command(flatten)]
        run: RunArgs,
        /// Estimate from these pagraph files instead of fresh runs.
        #[arg(long = "graph")]
        graphs: Vec<PathBuf>,
    },
    /// Frequency of more than `threshold` copies of a short cycle, by n.
    Divergence {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Frequency of Q1, Q2 and Q3 over the (n0, N0) grid.
    Qcheck {
        #[command(flatten)]
        run: RunArgs,
        /// Check a single pagraph or pattern file at every grid point instead.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Solve the pebble game on two graphs.
    Game {
        /// Left graph (pagraph or pattern file).
        left: PathBuf,
        /// Right graph (pagraph or pattern file).
        right: PathBuf,
        #[arg(long, default_value_t = 2)]
        gamma: usize,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        /// Include a Spoiler strategy tree when Spoiler wins.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = pafo_core::game::DEFAULT_MEMO_CAP)]
        memo_cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the transfer hypotheses and, when they hold, solve the game.
    Lemma2 {
        #[command(flatten)]
        run: RunArgs,
        /// First graph of a fixed pair; requires --right.
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        /// Second graph of a fixed pair; requires --left.
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct PatternArgs {
    /// Built-in pattern name such as C3, K4 or P3.
    #[arg(
        long,
        conflicts_with = "pattern_file",
        required_unless_present = "pattern_file"
    )]
    pub pattern: Option<String>,
    /// Pattern v1 file.
    #[arg(long)]
    pub pattern_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write here instead of stdout; skipped when the file already carries
    /// the same config hash.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Experiment settings: a `key = value` config file plus flag overrides.
#[derive(Args, Debug)]
pub struct RunArgs {
    /// Config file of `key = value` lines; flags take precedence.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    #[arg(short, long)]
    pub m: Option<String>,
    /// Attachment offset as p/q.
    #[arg(long)]
    pub delta: Option<String>,
    /// Base seed; run i uses seed + i.
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub seeds: Option<String>,
    /// Comma list of sizes or pow2:lo..hi.
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Comma list of pattern names.
    #[arg(long)]
    pub patterns: Option<String>,
    /// Comma list of n0 grid values.
    #[arg(long)]
    pub n0: Option<String>,
    /// Comma list of N0 grid values.
    #[arg(long = "N0")]
    pub big_n0: Option<String>,
    #[arg(long)]
    pub rounds: Option<String>,
    #[arg(long)]
    pub threshold: Option<String>,
    /// Cycle length for divergence.
    #[arg(long)]
    pub cycle: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    /// simple or multigraph.
    #[arg(long)]
    pub degree_mode: Option<String>,
    #[arg(long)]
    pub memo_cap: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl RunArgs {
    pub fn overrides(&self) -> Vec<(&'static str, &str)> {
        [
            ("m", &self.m),
            ("delta", &self.delta),
            ("seed", &self.seed),
            ("seeds", &self.seeds),
            ("schedule", &self.schedule),
            ("epsilon", &self.epsilon),
            ("patterns", &self.patterns),
            ("n0", &self.n0),
            ("N0", &self.big_n0),
            ("rounds", &self.rounds),
            ("threshold", &self.threshold),
            ("cycle", &self.cycle),
            ("gamma", &self.gamma),
            ("degree_mode", &self.degree_mode),
            ("memo_cap", &self.memo_cap),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }
}
