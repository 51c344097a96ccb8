//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rtl_core::container::{CodegreeWeights, DEFAULT_MATERIALIZATION_CAP};
use rtl_core::counting::{DEFAULT_ORACLE_CAP, DEFAULT_PARTITION_CAP, DEFAULT_WORK_BUDGET};
use rtl_core::stability::OperationOrder;
use rtl_core::CopyReading;
use std::path::PathBuf;

#[derive(Parser, Debug, Clone)]
#[command(name = "rtl", version, about = "Exact computations on rainbow-clique-free edge colorings")]
pub struct RunConfig {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Result cache, one JSON record per line.
    #[arg(long, env = "RTL_CACHE", global = true)]
    pub cache: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,

    /// Most colorings the brute-force oracle may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub oracle_cap: u64,

    /// Most constrained edges for the partition polynomial.
    #[arg(long, global = true, default_value_t = DEFAULT_PARTITION_CAP, value_parser = positive_usize)]
    pub partition_cap: usize,

    /// Most hyperedges to materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_MATERIALIZATION_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub materialize_cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Count rainbow-K_k-free r-edge-colorings of each input graph.
    Count(CountArgs),
    /// Partition polynomial coefficients of each input graph.
    Poly(PolyArgs),
    /// Maximum count over all graphs on n vertices (or over --input).
    Search(SearchArgs),
    /// Rainbow copies and list-size histogram of a template.
    TemplateStats(TemplateArgs),
    /// Rainbow hypergraph statistics of a complete template or a template file.
    ContainerStats(ContainerStatsArgs),
    /// Container hypothesis check for complete templates on K_n.
    ContainerThreshold(ThresholdArgs),
    /// Run the cleaning procedure on a template.
    Clean(CleanArgs),
    /// Critical triangles, edges and vertices of a template host.
    Critical(CriticalArgs),
    /// Fewest edges to delete to make each graph k-partite.
    Closeness(ClosenessArgs),
    /// Count (and optionally list) k-cliques.
    Cliques(CliquesArgs),
    /// Certified supersaturation bound.
    Supersat(SupersatArgs),
    /// Compare the clique-coloring and Turán lower bounds.
    BoundsCompare(BoundsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Inline graph6, a file of graph6 lines, or `-` for stdin.
    #[arg(long, short = 'g')]
    pub graph: String,
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(short = 'r', long)]
    pub r: u32,
    #[arg(short = 'k', long, default_value_t = 4)]
    pub k: usize,
    /// Use the brute-force oracle instead of the engine.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(short = 'k', long, default_value_t = 4)]
    pub k: usize,
    /// Also evaluate at this many colors.
    #[arg(long)]
    pub eval: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(short = 'n', long)]
    pub n: usize,
    #[arg(short = 'r', long)]
    pub r: u32,
    #[arg(short = 'k', long, default_value_t = 4)]
    pub k: usize,
    /// Graph6 candidates instead of all graphs on n vertices.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, default_value_t = DEFAULT_WORK_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub work_budget: u64,
    /// Omit the per-class table.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TemplateArgs {
    /// Template JSON: inline, a file, or `-` for stdin.
    #[arg(long, short = 't')]
    pub template: String,
}

#[derive(Args, Debug, Clone)]
pub struct ContainerStatsArgs {
    /// Host graph of a complete template.
    #[arg(long, short = 'g', conflicts_with = "template", required_unless_present = "template")]
    pub graph: Option<String>,
    #[arg(short = 'r', long, requires = "graph")]
    pub r: Option<u32>,
    #[arg(long, short = 't')]
    pub template: Option<String>,
    /// Build the explicit hypergraph and report its co-degrees.
    #[arg(long)]
    pub materialize: bool,
    /// Over the materialization cap, report counts without co-degrees.
    #[arg(long)]
    pub stats_only: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    Displayed,
    Definition,
}

impl From<Weights> for CodegreeWeights {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Displayed => CodegreeWeights::Displayed,
            Weights::Definition => CodegreeWeights::Definition,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ThresholdArgs {
    #[arg(short = 'r', long)]
    pub r: u32,
    /// Check this n (decimal) instead of searching for the least passing one.
    #[arg(short = 'n', long)]
    pub n: Option<String>,
    #[arg(long, value_enum, default_value_t = Weights::Displayed)]
    pub weights: Weights,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    PairSets,
    Subgraphs,
}

impl From<Reading> for CopyReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::PairSets => CopyReading::PairSets,
            Reading::Subgraphs => CopyReading::Subgraphs,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CleanArgs {
    #[command(flatten)]
    pub template: TemplateArgs,
    /// ξ as `p/q`, an integer or a decimal.
    #[arg(long, conflicts_with = "delta", required_unless_present = "delta")]
    pub xi: Option<String>,
    /// Derive ξ from δ (certified lower end of δ / 300e^6).
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long, default_value = "1,2", value_parser = parse_order)]
    pub priority: OperationOrder,
    #[arg(long, value_enum, default_value_t = Reading::PairSets)]
    pub reading: Reading,
    /// Original vertex count for the thresholds (defaults to the host order).
    #[arg(short = 'n', long)]
    pub n: Option<usize>,
}

fn parse_order(s: &str) -> Result<OperationOrder, String> {
    s.parse().map_err(|e: rtl_core::Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub template: TemplateArgs,
    #[arg(short = 'n', long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Reading::PairSets)]
    pub reading: Reading,
}

#[derive(Args, Debug, Clone)]
pub struct ClosenessArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(short = 'k', long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CliquesArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(short = 'k', long, default_value_t = 4)]
    pub k: usize,
    /// List the cliques as vertex arrays.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SupersatArgs {
    #[arg(short = 'n', long)]
    pub n: u64,
    #[arg(short = 't', long)]
    pub t: u64,
    #[arg(short = 'k', long)]
    pub k: u64,
    #[arg(short = 'e', long)]
    pub edges: u64,
}

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    #[arg(short = 'r', long)]
    pub r: u32,
    #[arg(short = 'k', long, default_value_t = 4)]
    pub k: u32,
}
