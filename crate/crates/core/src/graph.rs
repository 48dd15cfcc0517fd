//! Undirected simple graphs in compressed sparse row form, edge-list
//! ingestion and basic connectivity queries.

use std::collections::{HashMap, VecDeque};
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense node index in `[0, n)`.
pub type NodeId = usize;

/// How parallel edges between the same pair of nodes are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuplicateRule {
    /// Keep a single edge of weight 1.
    Collapse,
    /// Sum the weights of all copies.
    Sum,
}

/// Immutable undirected graph without self-loops or parallel edges.
///
/// Every edge `{u, v}` is stored twice, once in each endpoint's neighbor
/// list, and the lists are sorted by neighbor id.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// Builds a canonical graph from arbitrary `(u, v, w)` triples: self-loops
    /// are dropped and duplicates merged according to `rule`.
    pub fn from_weighted_edges<I>(node_count: usize, edges: I, rule: DuplicateRule) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut pairs = Vec::new();
        for (u, v, w) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight(w));
            }
            if u != v {
                pairs.push((u.min(v), u.max(v), w));
            }
        }
        pairs.sort_by_key(|a| (a.0, a.1));

        let mut merged: Vec<(NodeId, NodeId, f64)> = Vec::with_capacity(pairs.len());
        for (u, v, w) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => {
                    if rule == DuplicateRule::Sum {
                        last.2 += w;
                    }
                }
                _ => merged.push((u, v, if rule == DuplicateRule::Collapse { 1.0 } else { w })),
            }
        }
        Ok(Self::from_canonical(node_count, &merged))
    }

    /// Unweighted graph; duplicates collapse to weight 1.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_weighted_edges(
            node_count,
            edges.into_iter().map(|(u, v)| (u, v, 1.0)),
            DuplicateRule::Collapse,
        )
    }

    /// `edges` must be sorted, deduplicated, `u < v`, in range.
    pub(crate) fn from_canonical(node_count: usize, edges: &[(NodeId, NodeId, f64)]) -> Self {
        let mut degree = vec![0usize; node_count];
        for &(u, v, _) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..node_count].to_vec();
        let mut targets = vec![0; 2 * edges.len()];
        let mut weights = vec![0.0; 2 * edges.len()];
        // Lower endpoints first keeps every neighbor list sorted: for node x,
        // neighbors below x arrive as `v` entries in increasing `u` order, then
        // neighbors above x as `u` entries in increasing `v` order.
        for &(u, v, w) in edges {
            targets[cursor[v]] = u;
            weights[cursor[v]] = w;
            cursor[v] += 1;
        }
        for &(u, v, w) in edges {
            targets[cursor[u]] = v;
            weights[cursor[u]] = w;
            cursor[u] += 1;
        }
        let total_weight = edges.iter().map(|e| e.2).sum();
        Self {
            offsets,
            targets,
            weights,
            total_weight,
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sum of undirected edge weights (the edge count for unweighted graphs).
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn neighbor_weights(&self, node: NodeId) -> &[f64] {
        &self.weights[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn weighted_neighbors(&self, node: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.neighbors(node)
            .iter()
            .copied()
            .zip(self.neighbor_weights(node).iter().copied())
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn weighted_degree(&self, node: NodeId) -> f64 {
        self.neighbor_weights(node).iter().sum()
    }

    /// Weight of edge `{u, v}`, or `None` when absent.
    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let neighbors = self.neighbors(u);
        neighbors.binary_search(&v).ok().map(|i| self.neighbor_weights(u)[i])
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.weighted_neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Same topology with every weight reset to 1.
    pub fn unweighted(&self) -> Graph {
        let mut g = self.clone();
        g.weights.iter_mut().for_each(|w| *w = 1.0);
        g.total_weight = g.edge_count() as f64;
        g
    }

    /// Subgraph induced by `nodes`, with node `nodes[i]` renumbered to `i`.
    /// Edge weights are kept.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<Graph> {
        let mut local = HashMap::with_capacity(nodes.len());
        for (i, &node) in nodes.iter().enumerate() {
            if node >= self.node_count() {
                return Err(Error::NodeOutOfRange {
                    node,
                    node_count: self.node_count(),
                });
            }
            local.insert(node, i);
        }
        let mut edges = Vec::new();
        for (i, &node) in nodes.iter().enumerate() {
            for (v, w) in self.weighted_neighbors(node) {
                if let Some(&j) = local.get(&v) {
                    if i < j {
                        edges.push((i, j, w));
                    }
                }
            }
        }
        edges.sort_by_key(|a| (a.0, a.1));
        Ok(Graph::from_canonical(nodes.len(), &edges))
    }

    /// Component index of every node, numbered in order of each
    /// component's smallest node, plus the component count.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        const UNSEEN: usize = usize::MAX;
        let n = self.node_count();
        let mut label = vec![UNSEEN; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != UNSEEN {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if label[v] == UNSEEN {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.component_labels().1 == 1
    }
}

/// Bidirectional map between external node tokens and dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `0..n` rendered as decimal strings.
    pub fn identity(n: usize) -> Self {
        let mut map = Self::new();
        for i in 0..n {
            map.intern(&i.to_string());
        }
        map
    }

    /// Returns the id for `label`, assigning the next free id if unseen.
    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Restriction to `nodes`, where the new id `i` carries the label of `nodes[i]`.
    pub fn restrict(&self, nodes: &[NodeId]) -> LabelMap {
        let mut map = LabelMap::new();
        for &node in nodes {
            map.intern(self.label(node));
        }
        map
    }
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Lines whose first non-blank characters match one of these are skipped.
    pub comment_prefixes: Vec<String>,
    /// Field separator; `None` splits on any whitespace.
    pub delimiter: Option<char>,
    /// Read the optional third column as an edge weight and sum duplicates.
    pub weighted: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            comment_prefixes: vec!["#".into(), "%".into()],
            delimiter: None,
            weighted: false,
        }
    }
}

fn split_fields(line: &str, delimiter: Option<char>) -> Vec<&str> {
    match delimiter {
        None => line.split_whitespace().collect(),
        Some(d) => line.split(d).map(str::trim).filter(|f| !f.is_empty()).collect(),
    }
}

/// Reads an edge list. Node tokens are arbitrary strings, numbered in order
/// of first appearance.
pub fn parse_edge_list<R: BufRead>(reader: R, options: &ParseOptions) -> Result<(Graph, LabelMap)> {
    let mut labels = LabelMap::new();
    let mut edges = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || options.comment_prefixes.iter().any(|p| trimmed.starts_with(p.as_str())) {
            continue;
        }
        let fields = split_fields(trimmed, options.delimiter);
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 2 or 3 fields, found {}", fields.len()),
            });
        }
        let weight = match (options.weighted, fields.get(2)) {
            (true, Some(raw)) => {
                let w: f64 = raw.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("weight `{raw}` is not a number"),
                })?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("weight `{raw}` must be finite and positive"),
                    });
                }
                w
            }
            _ => 1.0,
        };
        let u = labels.intern(fields[0]);
        let v = labels.intern(fields[1]);
        edges.push((u, v, weight));
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rule = if options.weighted {
        DuplicateRule::Sum
    } else {
        DuplicateRule::Collapse
    };
    let graph = Graph::from_weighted_edges(labels.len(), edges, rule)?;
    Ok((graph, labels))
}

/// Writes one `u v` (or `u v w`) line per undirected edge using external labels.
pub fn write_edge_list<W: Write>(graph: &Graph, labels: &LabelMap, weighted: bool, mut out: W) -> Result<()> {
    for (u, v, w) in graph.edges() {
        if weighted {
            writeln!(out, "{} {} {}", labels.label(u), labels.label(v), w)?;
        } else {
            writeln!(out, "{} {}", labels.label(u), labels.label(v))?;
        }
    }
    Ok(())
}

/// Induced subgraph on the largest connected component and, for each new
/// id, the original id. Ties go to the component with the smallest minimum
/// id. A connected graph comes back unchanged with the identity map.
pub fn largest_connected_component(graph: &Graph) -> Result<(Graph, Vec<NodeId>)> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (labels, count) = graph.component_labels();
    if count == 1 {
        return Ok((graph.clone(), (0..graph.node_count()).collect()));
    }
    let mut sizes = vec![0usize; count];
    for &c in &labels {
        sizes[c] += 1;
    }
    // Components are numbered by their smallest node, so the first maximum wins the tie.
    let best = (0..count).fold(0, |best, c| if sizes[c] > sizes[best] { c } else { best });
    let nodes: Vec<NodeId> = (0..graph.node_count()).filter(|&u| labels[u] == best).collect();
    let sub = graph.induced_subgraph(&nodes)?;
    Ok((sub, nodes))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSummary {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub median: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub total_weight: f64,
    pub isolated_nodes: usize,
    pub components: usize,
    pub degree: DegreeSummary,
}

pub fn graph_stats(graph: &Graph) -> GraphStats {
    let n = graph.node_count();
    let mut degrees: Vec<usize> = (0..n).map(|u| graph.degree(u)).collect();
    degrees.sort_unstable();
    let degree = if n == 0 {
        DegreeSummary {
            min: 0,
            max: 0,
            mean: 0.0,
            median: 0.0,
        }
    } else {
        let median = if n % 2 == 1 {
            degrees[n / 2] as f64
        } else {
            (degrees[n / 2 - 1] + degrees[n / 2]) as f64 / 2.0
        };
        DegreeSummary {
            min: degrees[0],
            max: degrees[n - 1],
            mean: 2.0 * graph.edge_count() as f64 / n as f64,
            median,
        }
    };
    GraphStats {
        n,
        m: graph.edge_count(),
        total_weight: graph.total_weight(),
        isolated_nodes: degrees.iter().take_while(|&&d| d == 0).count(),
        components: graph.component_labels().1,
        degree,
    }
}
