//! Multi-dataset, multi-seed comparison of plain, motif and EdMot runs,
//! summarized as a mean±std table.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{largest_connected_component, parse_edge_list, Graph, LabelMap, ParseOptions};
use crate::metrics::{nmi, pairwise_f_score};
use crate::partition::{modularity, read_partition, Partition, Partitioner, PartitionerConfig};
use crate::pipeline::{detect, Method};

/// One manifest entry: `name edges_path [labels_path]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetSpec {
    pub name: String,
    pub edges: PathBuf,
    pub labels: Option<PathBuf>,
}

/// Parses a manifest with one whitespace-separated `name edges [labels]`
/// entry per line. Relative paths resolve against `base_dir`.
pub fn parse_manifest(text: &str, base_dir: &Path) -> Result<Vec<DatasetSpec>> {
    let mut specs = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::Parse {
                line: index + 1,
                message: "expected `name edges_path [labels_path]`".into(),
            });
        }
        let resolve = |p: &str| base_dir.join(p);
        specs.push(DatasetSpec {
            name: fields[0].to_owned(),
            edges: resolve(fields[1]),
            labels: fields.get(2).map(|p| resolve(p)),
        });
    }
    Ok(specs)
}

/// A network restricted to its largest connected component, with ground
/// truth aligned to the same ids when available.
#[derive(Clone, Debug)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub labels: LabelMap,
    pub truth: Option<Partition>,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn load_dataset(spec: &DatasetSpec) -> Result<Dataset> {
    let (graph, labels) = parse_edge_list(open(&spec.edges)?, &ParseOptions::default())?;
    let (graph, kept) = largest_connected_component(&graph)?;
    let labels = labels.restrict(&kept);
    let truth = match &spec.labels {
        Some(path) => Some(read_partition(open(path)?, &labels)?),
        None => None,
    };
    Ok(Dataset {
        name: spec.name.clone(),
        graph,
        labels,
        truth,
    })
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub runs: usize,
    pub base_seed: u64,
    /// One EdMot row per value.
    pub k_values: Vec<usize>,
    pub methods: Vec<Method>,
    pub partitioner: PartitionerConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            runs: 20,
            base_seed: 0,
            k_values: vec![1],
            methods: Method::ALL.to_vec(),
            partitioner: PartitionerConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Nmi,
    FScore,
    Modularity,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Nmi, Measure::FScore, Measure::Modularity];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Nmi => "nmi",
            Measure::FScore => "f_score",
            Measure::Modularity => "modularity",
        }
    }
}

/// Scores of a single seeded run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunScores {
    pub nmi: Option<f64>,
    pub f_score: Option<f64>,
    pub modularity: f64,
}

impl RunScores {
    fn get(&self, measure: Measure) -> Option<f64> {
        match measure {
            Measure::Nmi => self.nmi,
            Measure::FScore => self.f_score,
            Measure::Modularity => Some(self.modularity),
        }
    }
}

/// A row of the comparison table: a method, and K for EdMot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variant {
    pub method: Method,
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Runs(Vec<RunScores>),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchTable {
    pub partitioner: String,
    pub datasets: Vec<String>,
    pub variants: Vec<Variant>,
    /// `cells[variant][dataset]`.
    pub cells: Vec<Vec<Cell>>,
}

pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn score_run(
    data: &Dataset,
    variant: Variant,
    seed: u64,
    partitioner: &dyn Partitioner,
    template: &PartitionerConfig,
) -> Result<RunScores> {
    let cfg = PartitionerConfig {
        seed,
        ..template.clone()
    };
    let found = detect(&data.graph, variant.method, variant.k.unwrap_or(1), partitioner, &cfg)?;
    let q = modularity(&data.graph, &found.partition)?;
    let (nmi_value, f_value) = match &data.truth {
        Some(t) => (
            Some(nmi(&found.partition, t)?),
            Some(pairwise_f_score(&found.partition, t)?),
        ),
        None => (None, None),
    };
    Ok(RunScores {
        nmi: nmi_value,
        f_score: f_value,
        modularity: q,
    })
}

/// Runs every (variant, dataset) cell over seeds `base_seed..base_seed+runs`.
/// Cells run in parallel; the table does not depend on scheduling.
pub fn run_bench(
    datasets: &[(String, Result<Dataset>)],
    partitioner: &dyn Partitioner,
    cfg: &BenchConfig,
) -> BenchTable {
    let mut variants = Vec::new();
    for &method in &cfg.methods {
        if method == Method::Edmot {
            variants.extend(cfg.k_values.iter().map(|&k| Variant { method, k: Some(k) }));
        } else {
            variants.push(Variant { method, k: None });
        }
    }
    let seeds: Vec<u64> = (0..cfg.runs as u64).map(|i| cfg.base_seed + i).collect();

    let cells = variants
        .par_iter()
        .map(|&variant| {
            datasets
                .par_iter()
                .map(|(_, loaded)| match loaded {
                    Err(e) => Cell::Failed(e.to_string()),
                    Ok(data) => seeds
                        .par_iter()
                        .map(|&seed| score_run(data, variant, seed, partitioner, &cfg.partitioner))
                        .collect::<Result<Vec<_>>>()
                        .map_or_else(|e| Cell::Failed(e.to_string()), Cell::Runs),
                })
                .collect()
        })
        .collect();

    BenchTable {
        partitioner: partitioner.name().to_owned(),
        datasets: datasets.iter().map(|(name, _)| name.clone()).collect(),
        variants,
        cells,
    }
}

fn format_cell(cell: &Cell, measure: Measure) -> String {
    match cell {
        Cell::Failed(msg) => format!("error: {msg}"),
        Cell::Runs(runs) => {
            let values: Option<Vec<f64>> = runs.iter().map(|r| r.get(measure)).collect();
            match values {
                Some(v) if !v.is_empty() => {
                    let (mean, std) = mean_std(&v);
                    format!("{mean:.4}±{std:.4}")
                }
                _ => "n/a".to_owned(),
            }
        }
    }
}

/// One row per method (and K), with columns `method,k` followed by
/// `<dataset>:nmi`, `<dataset>:f_score` and `<dataset>:modularity` for each
/// dataset in manifest order.
pub fn write_csv<W: Write>(table: &BenchTable, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let to_io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut header = vec!["method".to_owned(), "k".to_owned()];
    for dataset in &table.datasets {
        header.extend(Measure::ALL.iter().map(|m| format!("{dataset}:{}", m.name())));
    }
    writer.write_record(&header).map_err(to_io)?;
    for (variant, row) in table.variants.iter().zip(&table.cells) {
        let mut record = vec![
            variant.method.display_name(&table.partitioner),
            variant.k.map_or_else(|| "-".to_owned(), |k| k.to_string()),
        ];
        for cell in row {
            record.extend(Measure::ALL.iter().map(|&m| format_cell(cell, m)));
        }
        writer.write_record(&record).map_err(to_io)?;
    }
    writer.flush()?;
    Ok(())
}
