//! Connected components and isolated nodes of the motif co-occurrence graph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::motif::MotifAdjacency;

/// Components of a graph with at least two nodes, plus the nodes that have
/// no edges at all. Together they partition the node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSet {
    /// Sorted by size descending, then smallest member ascending. Each
    /// component is sorted.
    pub components: Vec<Vec<NodeId>>,
    pub isolated: Vec<NodeId>,
}

impl ComponentSet {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn node_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() + self.isolated.len()
    }
}

pub fn connected_components(graph: &Graph) -> ComponentSet {
    let (labels, count) = graph.component_labels();
    let mut groups: Vec<Vec<NodeId>> = vec![Vec::new(); count];
    for (node, &c) in labels.iter().enumerate() {
        groups[c].push(node);
    }
    let (mut components, singles): (Vec<_>, Vec<_>) = groups.into_iter().partition(|c| c.len() >= 2);
    // Groups are already ordered by smallest member, and the sort is stable.
    components.sort_by_key(|c| std::cmp::Reverse(c.len()));
    ComponentSet {
        components,
        isolated: singles.into_iter().flatten().collect(),
    }
}

/// Components of the motif graph.
pub fn motif_components(h: &MotifAdjacency) -> ComponentSet {
    connected_components(h.graph())
}

/// The first `min(k, c)` components in the [`ComponentSet`] ordering.
pub fn top_k_components(cs: &ComponentSet, k: usize) -> Result<&[Vec<NodeId>]> {
    if k == 0 {
        return Err(Error::InvalidTopK);
    }
    Ok(&cs.components[..k.min(cs.components.len())])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FragmentationReport {
    pub node_count: usize,
    pub component_count: usize,
    pub largest_component: usize,
    /// Component size to the number of components of that size.
    pub component_size_histogram: BTreeMap<usize, usize>,
    pub isolated_count: usize,
    pub isolated_fraction: f64,
    pub triangle_count: u64,
}

/// Summary of how the motif graph `h` of `g` breaks apart.
pub fn fragmentation_report(g: &Graph, h: &MotifAdjacency) -> Result<FragmentationReport> {
    if g.node_count() != h.node_count() {
        return Err(Error::NodeSetMismatch {
            expected: g.node_count(),
            found: h.node_count(),
        });
    }
    let cs = motif_components(h);
    let mut histogram = BTreeMap::new();
    for c in &cs.components {
        *histogram.entry(c.len()).or_insert(0) += 1;
    }
    let n = g.node_count();
    Ok(FragmentationReport {
        node_count: n,
        component_count: cs.component_count(),
        largest_component: cs.components.first().map_or(0, Vec::len),
        component_size_histogram: histogram,
        isolated_count: cs.isolated.len(),
        isolated_fraction: if n == 0 {
            0.0
        } else {
            cs.isolated.len() as f64 / n as f64
        },
        triangle_count: h.triangle_count(),
    })
}
