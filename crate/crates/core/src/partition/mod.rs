//! Node partitions, modularity, and the partitioner interface.

mod louvain;

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::Serialize;

pub use louvain::{louvain, louvain_with_trace, Louvain, LouvainTrace};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelMap, NodeId};

/// Total assignment of nodes to communities with labels compacted to
/// `[0, community_count)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Compacts arbitrary labels, numbering communities in order of first
    /// appearance by node id.
    pub fn from_labels<L>(labels: impl IntoIterator<Item = L>) -> Self
    where
        L: Eq + std::hash::Hash,
    {
        let mut ids = HashMap::new();
        let assignment: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Self {
            community_count: ids.len(),
            assignment,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            community_count: n,
        }
    }

    pub fn single_community(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            community_count: usize::from(n > 0),
        }
    }

    /// Builds a partition from explicit communities. Fails if the sets are
    /// not a partition of `[0, n)`.
    pub fn from_communities(n: usize, communities: &[Vec<NodeId>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        let mut assigned = 0;
        for (c, members) in communities.iter().enumerate() {
            for &node in members {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, node_count: n });
                }
                if labels[node] == usize::MAX {
                    assigned += 1;
                }
                labels[node] = c;
            }
        }
        if assigned != n {
            return Err(Error::IncompletePartition {
                assigned,
                node_count: n,
            });
        }
        Ok(Self::from_labels(labels))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn community_of(&self, node: NodeId) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of each community, each list sorted.
    pub fn communities(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    pub(crate) fn check_covers(&self, graph: &Graph) -> Result<()> {
        if self.len() != graph.node_count() {
            return Err(Error::IncompletePartition {
                assigned: self.len(),
                node_count: graph.node_count(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionerConfig {
    pub seed: u64,
    /// Upper bound on coarsening levels.
    pub max_passes: usize,
    /// A sweep of local moves must raise modularity by more than this to continue.
    pub min_modularity_gain: f64,
    /// Independent node orderings tried; the best modularity is kept.
    pub restarts: usize,
}

impl Default for PartitionerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_passes: 100,
            min_modularity_gain: 1e-7,
            restarts: 10,
        }
    }
}

impl PartitionerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_modularity_gain > 0.0 && self.min_modularity_gain.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "min_modularity_gain must be positive, got {}",
                self.min_modularity_gain
            )));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_passes == 0 {
            return Err(Error::InvalidConfig("max_passes must be at least 1".into()));
        }
        Ok(())
    }
}

/// A graph partitioning method. Implementations must honor edge weights and
/// return a partition covering every node of `graph`.
pub trait Partitioner: Sync {
    fn name(&self) -> &str;

    fn partition(&self, graph: &Graph, cfg: &PartitionerConfig) -> Result<Partition>;
}

/// Newman modularity with weighted degrees:
/// `Q = 1/(2μ) Σ_ij (A_ij − k_i k_j / 2μ) δ(c_i, c_j)`.
pub fn modularity(graph: &Graph, partition: &Partition) -> Result<f64> {
    partition.check_covers(graph)?;
    let two_mu = 2.0 * graph.total_weight();
    if two_mu <= 0.0 {
        return Err(Error::ZeroTotalWeight);
    }
    let c = partition.community_count();
    let mut internal = vec![0.0; c];
    let mut total = vec![0.0; c];
    for u in 0..graph.node_count() {
        let cu = partition.community_of(u);
        for (v, w) in graph.weighted_neighbors(u) {
            total[cu] += w;
            if partition.community_of(v) == cu {
                internal[cu] += w;
            }
        }
    }
    Ok(internal
        .iter()
        .zip(&total)
        .map(|(&inside, &tot)| inside / two_mu - (tot / two_mu).powi(2))
        .sum())
}

/// Writes `label community` lines, one per node in id order.
pub fn write_partition<W: Write>(partition: &Partition, labels: &LabelMap, mut out: W) -> Result<()> {
    for (node, &c) in partition.assignment().iter().enumerate() {
        writeln!(out, "{} {}", labels.label(node), c)?;
    }
    Ok(())
}

/// Reads `node_label community_label` lines and aligns them with `labels`.
/// Nodes absent from `labels` are ignored; nodes of `labels` missing from the
/// file are an error.
pub fn read_partition<R: BufRead>(reader: R, labels: &LabelMap) -> Result<Partition> {
    let mut community: Vec<Option<String>> = vec![None; labels.len()];
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: index + 1,
                message: format!("expected `node community`, found {} fields", fields.len()),
            });
        }
        if let Some(id) = labels.id(fields[0]) {
            community[id] = Some(fields[1].to_owned());
        }
    }
    let mut out = Vec::with_capacity(community.len());
    for (id, c) in community.into_iter().enumerate() {
        out.push(c.ok_or_else(|| Error::MissingLabel(labels.label(id).to_owned()))?);
    }
    Ok(Partition::from_labels(out))
}
