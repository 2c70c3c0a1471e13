use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "zeroerr",
    version,
    about = "Zero-error function computation with side information"
)]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build and transform graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Build function instances.
    #[command(subcommand)]
    Instance(InstanceCmd),
    /// Confusion graphs of an instance.
    #[command(subcommand)]
    Confusion(ConfusionCmd),
    /// Graph invariants.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Orthogonal representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Zero-error quantum protocols.
    #[command(subcommand)]
    Protocol(ProtocolCmd),
    /// Classical and quantum rate reports.
    #[command(subcommand)]
    Rates(RatesCmd),
    /// Structural checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Strong,
    Or,
}

#[derive(Args, Debug)]
pub struct GraphOut {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Emit a named graph or normalize a graph JSON file.
    Build {
        /// Graph spec: pentagon, g13, ldg13, complete(n), empty(n), h(n), complement(SPEC), or a JSON file.
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Product of two graphs.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        out: GraphOut,
    },
    /// m-th strong or OR power.
    Power {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        out: GraphOut,
    },
    Complement {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Directed line graph of the bidirected version of a graph.
    Linegraph {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        out: GraphOut,
    },
}

#[derive(Subcommand, Debug)]
pub enum InstanceCmd {
    /// Validate an instance JSON file and print it normalized.
    Build {
        #[arg(long)]
        input: PathBuf,
    },
    /// One of f_tilde, g_tilde, h_tilde, pentagon_equality.
    Builtin {
        #[arg(long)]
        name: String,
    },
    /// Instance whose m-instance graphs are the strong or OR powers of a graph.
    FromGraph {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConfusionCmd {
    /// Single-instance confusion graph.
    Single {
        /// Builtin instance name or instance JSON file.
        #[arg(long)]
        instance: String,
        #[command(flatten)]
        out: GraphOut,
    },
    /// m-instance confusion graph.
    Power {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Cause of every non-edge (no common support, or equal values).
    Classify {
        #[arg(long)]
        instance: String,
    },
    /// Which product the m-instance graphs collapse to.
    Predict {
        #[arg(long)]
        instance: String,
    },
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[arg(long)]
    pub graph: String,
    /// Solver budget per call in seconds.
    #[arg(long, default_value_t = 300.0)]
    pub budget_seconds: f64,
    /// Print JSON instead of plain text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum InvariantCmd {
    Alpha(InvariantArgs),
    Omega(InvariantArgs),
    Chi(InvariantArgs),
    Chif(InvariantArgs),
    Theta(InvariantArgs),
    /// Orthogonal-rank bracket, optionally using a representation certificate.
    Xi {
        #[command(flatten)]
        args: InvariantArgs,
        /// Builtin representation (e.g. c5bar, g13bar^2) or representation JSON file.
        #[arg(long)]
        rep: Option<String>,
    },
    /// Directed edge chromatic number of the bidirected graph.
    Edgechrom(InvariantArgs),
    /// Full JSON invariant report.
    Report {
        #[command(flatten)]
        args: InvariantArgs,
        #[arg(long)]
        rep: Option<String>,
        /// Include a coloring and an independent set.
        #[arg(long)]
        certificates: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Emit a builtin representation (c5bar, g13bar, hbar(n), ldg13bar).
    Builtin {
        #[arg(long)]
        name: String,
    },
    /// Check a representation against a graph.
    Verify {
        #[arg(long)]
        rep: String,
        /// Graph the representation should represent; defaults to its own target.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Tensor product of two representations.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Basis-vector representation from a coloring of the complement.
    FromColoring {
        #[arg(long)]
        graph: String,
        /// Comma-separated colors in vertex order.
        #[arg(long)]
        coloring: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProtocolCmd {
    /// Build the protocol for an instance and representation and verify it exhaustively.
    Verify {
        /// Builtin instance name.
        #[arg(long, conflicts_with = "instance")]
        builtin: Option<String>,
        /// Instance JSON file.
        #[arg(long)]
        instance: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Representation of the complement of the m-instance graph: builtin name,
        /// `name^k` for a tensor power, or JSON file.
        #[arg(long)]
        rep: String,
        /// Print the full transcript.
        #[arg(long)]
        transcript: bool,
        /// Demonstration: sample Bob's measurement for this x̄ (needs --sample-y).
        #[arg(long, requires = "sample_y")]
        sample_x: Option<String>,
        /// Comma-separated side-information labels ȳ.
        #[arg(long)]
        sample_y: Option<String>,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct RateArgs {
    #[arg(long, default_value_t = 2)]
    pub m_max: usize,
    /// Solver budget per invariant call in seconds.
    #[arg(long, default_value_t = 5.0)]
    pub budget_seconds: f64,
}

#[derive(Subcommand, Debug)]
pub enum RatesCmd {
    /// Rate report for an instance.
    Report {
        #[arg(long)]
        instance: String,
        /// Representation of the complement of the confusion graph.
        #[arg(long)]
        rep: Option<String>,
        #[command(flatten)]
        rate: RateArgs,
    },
    /// Named case: c5_strong, c5_or, c5_between, g13_or, ldg13_strong, ldg13_or, hn(n).
    Casebook {
        #[arg(long)]
        case: String,
        #[command(flatten)]
        rate: RateArgs,
    },
    /// Advantage table with computed verdicts.
    Table1 {
        #[command(flatten)]
        rate: RateArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Common-neighbour table of G13.
    G13Structure,
}
