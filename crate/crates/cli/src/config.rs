//! Command-line arguments and the run configuration embedded in reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use edmot::{Method, PartitionerConfig};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "edmot",
    version,
    about = "Motif-aware community detection by edge enhancement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities and write a JSON report.
    Detect(DetectArgs),
    /// Report how the triangle hypergraph fragments, as JSON.
    Components(GraphArgs),
    /// Write the triangle motif adjacency as `i j weight` lines.
    Motif(GraphArgs),
    /// Compare plain, motif and EdMot runs over a dataset manifest, as CSV.
    Bench(BenchArgs),
    /// Print basic graph statistics as JSON.
    Stats(GraphArgs),
}

/// Input options shared by every command that reads one graph.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list: one `u v` or `u v w` pair per line; `#` and `%` start comments.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Read the third column as an edge weight and sum duplicate edges.
    #[arg(long)]
    pub weighted: bool,
    /// Keep only the largest connected component of the input.
    #[arg(long)]
    pub largest_component: bool,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output file; defaults to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Partitioner knobs shared by `detect` and `bench`.
#[derive(Debug, Args)]
pub struct PartitionerArgs {
    /// Louvain restarts per run; the best-modularity ordering is kept.
    #[arg(long, default_value_t = PartitionerConfig::default().restarts as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Ground truth as `node community` lines; enables NMI and F-score.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value = "edmot")]
    pub method: Method,
    /// Number of motif components partitioned into modules.
    #[arg(long, short = 'k', default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub top_k: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub partitioner: PartitionerArgs,
    /// JSON report path; defaults to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also write the partition as `node community` lines.
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Lines of `name edges_path [labels_path]`, relative to the manifest.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Seeded runs per cell, using seeds `seed..seed+runs`.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// A single K, or an inclusive range `A..B` for one EdMot row per K.
    #[arg(long, short = 'k', default_value = "1", value_parser = parse_k_values)]
    pub top_k: KValues,
    /// Methods to compare, comma separated.
    #[arg(long, value_delimiter = ',', default_values = ["plain", "motif", "edmot"])]
    pub methods: Vec<Method>,
    #[command(flatten)]
    pub partitioner: PartitionerArgs,
    /// CSV path; defaults to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KValues(pub Vec<usize>);

fn parse_k_values(raw: &str) -> Result<KValues, String> {
    let parse = |s: &str| -> Result<usize, String> {
        match s.trim().parse::<usize>() {
            Ok(0) => Err("K must be at least 1".into()),
            Ok(k) => Ok(k),
            Err(_) => Err(format!("`{s}` is not a positive integer")),
        }
    };
    match raw.split_once("..") {
        None => Ok(KValues(vec![parse(raw)?])),
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty K range {raw}"));
            }
            Ok(KValues((a..=b).collect()))
        }
    }
}

/// Everything needed to reproduce a run, embedded in each JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: PathBuf,
    pub labels: Option<PathBuf>,
    pub method: Option<Method>,
    pub top_k: Vec<usize>,
    pub seed: u64,
    pub runs: usize,
    pub output: Option<PathBuf>,
    pub format: &'static str,
    pub weighted: bool,
    pub largest_component: bool,
    pub partitioner: PartitionerConfig,
}

impl RunConfig {
    pub fn for_graph(command: &'static str, format: &'static str, args: &GraphArgs) -> Self {
        Self {
            command,
            input: args.input.input.clone(),
            labels: None,
            method: None,
            top_k: Vec::new(),
            seed: 0,
            runs: 1,
            output: args.output.clone(),
            format,
            weighted: args.input.weighted,
            largest_component: args.input.largest_component,
            partitioner: PartitionerConfig::default(),
        }
    }

    pub fn for_detect(args: &DetectArgs) -> Self {
        Self {
            command: "detect",
            input: args.input.input.clone(),
            labels: args.labels.clone(),
            method: Some(args.method),
            top_k: vec![args.top_k as usize],
            seed: args.seed,
            runs: 1,
            output: args.output.clone(),
            format: "json",
            weighted: args.input.weighted,
            largest_component: args.input.largest_component,
            partitioner: PartitionerConfig {
                seed: args.seed,
                restarts: args.partitioner.restarts as usize,
                ..PartitionerConfig::default()
            },
        }
    }
}
