use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use edmot::bench::{load_dataset, parse_manifest, run_bench, write_csv, BenchConfig};
use edmot::partition::{read_partition, write_partition};
use edmot::{
    build_motif_adjacency, detect, evaluate, fragmentation_report, graph_stats, largest_connected_component,
    parse_edge_list, Graph, LabelMap, Louvain, MotifDescriptor, ParseOptions, PartitionerConfig, RunInfo,
};
use serde::Serialize;

use crate::config::{BenchArgs, Cli, Command, DetectArgs, GraphArgs, InputArgs, RunConfig};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Detect(args) => cmd_detect(&args),
        Command::Components(args) => cmd_components(&args),
        Command::Motif(args) => cmd_motif(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Stats(args) => cmd_stats(&args),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .with_context(|| format!("cannot open {}", path.display()))
}

fn load_graph(args: &InputArgs) -> Result<(Graph, LabelMap)> {
    let options = ParseOptions {
        weighted: args.weighted,
        ..Default::default()
    };
    let (graph, labels) =
        parse_edge_list(open(&args.input)?, &options).with_context(|| format!("reading {}", args.input.display()))?;
    if !args.largest_component {
        return Ok((graph, labels));
    }
    let (graph, kept) = largest_connected_component(&graph)?;
    Ok((graph, labels.restrict(&kept)))
}

/// Writes to `path`, or stdout when absent, flushing before returning.
fn with_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
            lock.flush()?;
        }
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut out = BufWriter::new(file);
            body(&mut out)?;
            out.flush().with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    with_output(path, |out| {
        serde_json::to_writer_pretty(&mut *out, value)?;
        writeln!(out)?;
        Ok(())
    })
}

#[derive(Serialize)]
struct PartitionJson<'a> {
    labels: &'a [String],
    assignment: &'a [usize],
    community_count: usize,
}

#[derive(Serialize)]
struct DetectReport<'a> {
    config: RunConfig,
    report: edmot::EvalReport,
    partition: PartitionJson<'a>,
}

fn cmd_detect(args: &DetectArgs) -> Result<()> {
    let config = RunConfig::for_detect(args);
    let (graph, labels) = load_graph(&args.input)?;
    let truth = args
        .labels
        .as_deref()
        .map(|path| read_partition(open(path)?, &labels).with_context(|| format!("reading {}", path.display())))
        .transpose()?;

    let start = Instant::now();
    let found = detect(&graph, args.method, args.top_k as usize, &Louvain, &config.partitioner)
        .with_context(|| format!("{} detection failed", args.method))?;
    let wall_time_seconds = start.elapsed().as_secs_f64();

    let info = RunInfo {
        dataset: args.input.input.display().to_string(),
        method: args.method.display_name("Louvain"),
        k: args.top_k as usize,
        seed: args.seed,
        wall_time_seconds,
    };
    let report = evaluate(
        info,
        &found.partition,
        &graph,
        found.rewired.as_ref(),
        truth.as_ref(),
        found.trace,
    )?;

    if let Some(path) = &args.partition {
        with_output(Some(path), |out| Ok(write_partition(&found.partition, &labels, out)?))?;
    }
    let json = DetectReport {
        config,
        report,
        partition: PartitionJson {
            labels: labels.labels(),
            assignment: found.partition.assignment(),
            community_count: found.partition.community_count(),
        },
    };
    write_json(args.output.as_deref(), &json)
}

fn cmd_components(args: &GraphArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Report {
        config: RunConfig,
        fragmentation: edmot::FragmentationReport,
    }
    let (graph, _) = load_graph(&args.input)?;
    let h = build_motif_adjacency(&graph, MotifDescriptor::TRIANGLE)?;
    let report = Report {
        config: RunConfig::for_graph("components", "json", args),
        fragmentation: fragmentation_report(&graph, &h)?,
    };
    write_json(args.output.as_deref(), &report)
}

fn cmd_motif(args: &GraphArgs) -> Result<()> {
    let (graph, labels) = load_graph(&args.input)?;
    let h = build_motif_adjacency(&graph, MotifDescriptor::TRIANGLE)?;
    with_output(args.output.as_deref(), |out| {
        for (u, v, w) in h.graph().edges() {
            writeln!(out, "{} {} {}", labels.label(u), labels.label(v), w as u64)?;
        }
        Ok(())
    })
}

fn cmd_stats(args: &GraphArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Report {
        config: RunConfig,
        stats: edmot::GraphStats,
    }
    let (graph, _) = load_graph(&args.input)?;
    let report = Report {
        config: RunConfig::for_graph("stats", "json", args),
        stats: graph_stats(&graph),
    };
    write_json(args.output.as_deref(), &report)
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.manifest)
        .with_context(|| format!("cannot read manifest {}", args.manifest.display()))?;
    let base = args.manifest.parent().unwrap_or(Path::new("."));
    let specs = parse_manifest(&text, base).with_context(|| format!("parsing {}", args.manifest.display()))?;
    let loaded: Vec<_> = specs.iter().map(|s| (s.name.clone(), load_dataset(s))).collect();
    let cfg = BenchConfig {
        runs: args.runs as usize,
        base_seed: args.seed,
        k_values: args.top_k.0.clone(),
        methods: args.methods.clone(),
        partitioner: PartitionerConfig {
            restarts: args.partitioner.restarts as usize,
            ..PartitionerConfig::default()
        },
    };
    let table = run_bench(&loaded, &Louvain, &cfg);
    with_output(args.output.as_deref(), |out| Ok(write_csv(&table, out)?))
}
