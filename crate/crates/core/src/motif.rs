//! Triangle enumeration and the motif co-occurrence (motif adjacency) graph.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A motif with `nodes` nodes and `edges` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MotifDescriptor {
    pub nodes: usize,
    pub edges: usize,
}

impl MotifDescriptor {
    pub const TRIANGLE: MotifDescriptor = MotifDescriptor { nodes: 3, edges: 3 };

    pub fn is_triangle(&self) -> bool {
        *self == Self::TRIANGLE
    }
}

impl fmt::Display for MotifDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.nodes, self.edges)
    }
}

/// Default node cap for [`brute_force_motif_adjacency`].
pub const DEFAULT_ORACLE_CAP: usize = 500;

/// Weighted graph whose edge `{i, j}` carries the number of motif instances
/// containing both `i` and `j`. Pairs with no common instance have no edge.
#[derive(Clone, Debug, PartialEq)]
pub struct MotifAdjacency {
    graph: Graph,
}

impl MotifAdjacency {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Co-occurrence count of `i` and `j` (zero when they share no motif).
    pub fn weight(&self, i: NodeId, j: NodeId) -> u64 {
        self.graph.edge_weight(i, j).map_or(0, |w| w as u64)
    }

    /// Number of triangles, recovered from the fact that each one adds 1 to three pairs.
    pub fn triangle_count(&self) -> u64 {
        (self.graph.total_weight() / 3.0).round() as u64
    }
}

/// Out-neighbors under the (degree, id) ordering: each edge is kept only at
/// its lower-ranked endpoint. Lists stay sorted by node id.
struct Oriented {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Oriented {
    fn new(graph: &Graph) -> Self {
        let n = graph.node_count();
        let ranks_below = |u: NodeId, v: NodeId| (graph.degree(u), u) < (graph.degree(v), v);
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(graph.edge_count());
        offsets.push(0);
        for u in 0..n {
            targets.extend(graph.neighbors(u).iter().copied().filter(|&v| ranks_below(u, v)));
            offsets.push(targets.len());
        }
        Self { offsets, targets }
    }

    fn out(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Calls `visit` once per triangle with the positions of its three
    /// oriented edges `(u,v)`, `(u,w)`, `(v,w)` in `targets`.
    fn for_each_triangle<F>(&self, mut visit: F)
    where
        F: FnMut(NodeId, NodeId, NodeId, [usize; 3]),
    {
        for u in 0..self.offsets.len() - 1 {
            let u_start = self.offsets[u];
            let u_out = self.out(u);
            for (iv, &v) in u_out.iter().enumerate() {
                let v_start = self.offsets[v];
                let v_out = self.out(v);
                let (mut a, mut b) = (0, 0);
                while a < u_out.len() && b < v_out.len() {
                    match u_out[a].cmp(&v_out[b]) {
                        std::cmp::Ordering::Less => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                        std::cmp::Ordering::Equal => {
                            visit(u, v, u_out[a], [u_start + iv, u_start + a, v_start + b]);
                            a += 1;
                            b += 1;
                        }
                    }
                }
            }
        }
    }
}

/// Every triangle `(i, j, k)` with `i < j < k`, exactly once, in
/// lexicographic order.
///
/// Uses the compact-forward scheme: nodes are ranked by (degree, id), each
/// edge is oriented toward the higher rank, and triangles are found by
/// intersecting sorted out-neighbor lists, which is `O(m^1.5)`.
pub fn enumerate_triangles(graph: &Graph) -> impl Iterator<Item = (NodeId, NodeId, NodeId)> {
    let mut triangles = Vec::new();
    Oriented::new(graph).for_each_triangle(|u, v, w, _| {
        let mut t = [u, v, w];
        t.sort_unstable();
        triangles.push((t[0], t[1], t[2]));
    });
    triangles.sort_unstable();
    triangles.into_iter()
}

/// Number of triangles without materializing them.
pub fn count_triangles(graph: &Graph) -> u64 {
    let mut count = 0;
    Oriented::new(graph).for_each_triangle(|_, _, _, _| count += 1);
    count
}

pub fn build_motif_adjacency(graph: &Graph, motif: MotifDescriptor) -> Result<MotifAdjacency> {
    if !motif.is_triangle() {
        return Err(Error::UnsupportedMotif {
            nodes: motif.nodes,
            edges: motif.edges,
        });
    }
    let oriented = Oriented::new(graph);
    let mut counts = vec![0u64; oriented.targets.len()];
    oriented.for_each_triangle(|_, _, _, slots| {
        for slot in slots {
            counts[slot] += 1;
        }
    });

    let mut edges = Vec::new();
    for u in 0..graph.node_count() {
        let start = oriented.offsets[u];
        for (i, &v) in oriented.out(u).iter().enumerate() {
            let c = counts[start + i];
            if c > 0 {
                edges.push((u.min(v), u.max(v), c as f64));
            }
        }
    }
    edges.sort_by_key(|a| (a.0, a.1));
    Ok(MotifAdjacency {
        graph: Graph::from_canonical(graph.node_count(), &edges),
    })
}

/// Exhaustive triple scan, used as an independent check on
/// [`build_motif_adjacency`]. Limited to [`DEFAULT_ORACLE_CAP`] nodes.
pub fn brute_force_motif_adjacency(graph: &Graph) -> Result<MotifAdjacency> {
    brute_force_motif_adjacency_with_cap(graph, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_motif_adjacency_with_cap(graph: &Graph, cap: usize) -> Result<MotifAdjacency> {
    let n = graph.node_count();
    if n > cap {
        return Err(Error::OracleCapExceeded { node_count: n, cap });
    }
    let mut adjacent = vec![false; n * n];
    for (u, v, _) in graph.edges() {
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }
    let mut counts = vec![0u64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if !adjacent[i * n + j] {
                continue;
            }
            for k in j + 1..n {
                if adjacent[i * n + k] && adjacent[j * n + k] {
                    counts[i * n + j] += 1;
                    counts[i * n + k] += 1;
                    counts[j * n + k] += 1;
                }
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if counts[i * n + j] > 0 {
                edges.push((i, j, counts[i * n + j] as f64));
            }
        }
    }
    Ok(MotifAdjacency {
        graph: Graph::from_canonical(n, &edges),
    })
}
