//! Multilevel Louvain modularity maximization.
//!
//! Each pass sweeps the nodes of the working graph in a seeded random
//! order, moving every node to the neighboring community with the largest
//! modularity gain, until a full sweep gains no more than
//! `min_modularity_gain`. Communities are then collapsed into single nodes
//! (with self-loops carrying their internal weight) and the next pass runs
//! on the coarser graph. Ties keep the node where it is; among other tied
//! targets the lowest community label wins.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Partition, Partitioner, PartitionerConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

const TIE_TOLERANCE: f64 = 1e-12;

/// The Louvain method as a [`Partitioner`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Louvain;

impl Partitioner for Louvain {
    fn name(&self) -> &str {
        "Louvain"
    }

    fn partition(&self, graph: &Graph, cfg: &PartitionerConfig) -> Result<Partition> {
        louvain(graph, cfg)
    }
}

/// Modularity observed while Louvain ran, for monotonicity checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LouvainTrace {
    /// Modularity of the singleton start, then after every pass.
    pub pass_modularity: Vec<f64>,
    /// Modularity after every sweep of every pass.
    pub sweep_modularity: Vec<f64>,
}

pub fn louvain(graph: &Graph, cfg: &PartitionerConfig) -> Result<Partition> {
    louvain_with_trace(graph, cfg).map(|(p, _)| p)
}

/// Runs Louvain and also returns the modularity trajectory of the
/// returned (best) restart.
///
/// Restart `i` sweeps nodes in an order drawn from stream `i` of the seeded
/// generator; the highest-modularity result wins, earliest on ties. A graph
/// with nodes but no edges yields the singleton partition.
pub fn louvain_with_trace(graph: &Graph, cfg: &PartitionerConfig) -> Result<(Partition, LouvainTrace)> {
    cfg.validate()?;
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if graph.total_weight() <= 0.0 {
        return Ok((Partition::singletons(graph.node_count()), LouvainTrace::default()));
    }
    let mut best: Option<(Partition, LouvainTrace)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let (partition, trace) = run_once(graph, cfg, &mut rng);
        let q = final_modularity(&trace);
        if best
            .as_ref()
            .is_none_or(|(_, t)| q > final_modularity(t) + TIE_TOLERANCE)
        {
            best = Some((partition, trace));
        }
    }
    Ok(best.expect("restarts >= 1"))
}

fn final_modularity(trace: &LouvainTrace) -> f64 {
    *trace.pass_modularity.last().unwrap()
}

fn run_once(graph: &Graph, cfg: &PartitionerConfig, rng: &mut ChaCha8Rng) -> (Partition, LouvainTrace) {
    let mut trace = LouvainTrace::default();
    let mut level = Level::from_graph(graph);
    let two_mu = 2.0 * graph.total_weight();
    let mut membership: Vec<usize> = (0..graph.node_count()).collect();
    let identity: Vec<usize> = (0..level.len()).collect();
    trace.pass_modularity.push(level.modularity(&identity, two_mu));

    for _ in 0..cfg.max_passes {
        let mut order: Vec<usize> = (0..level.len()).collect();
        order.shuffle(rng);
        let (community, moved) = level.move_nodes(&order, two_mu, cfg.min_modularity_gain, &mut trace);
        if !moved {
            break;
        }
        let compact = Partition::from_labels(community);
        for m in membership.iter_mut() {
            *m = compact.community_of(*m);
        }
        level = level.aggregate(&compact);
        let identity: Vec<usize> = (0..level.len()).collect();
        let q = level.modularity(&identity, two_mu);
        debug_assert!(
            q >= final_modularity(&trace) - 1e-9,
            "modularity decreased across a pass"
        );
        trace.pass_modularity.push(q);
    }
    (Partition::from_labels(membership), trace)
}

/// Working graph for one pass. Neighbor lists exclude the node itself;
/// `self_loop[i]` holds the weight of ordered pairs collapsed into node `i`.
struct Level {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    self_loop: Vec<f64>,
    degree: Vec<f64>,
}

impl Level {
    fn from_graph(graph: &Graph) -> Self {
        let n = graph.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * graph.edge_count());
        let mut weights = Vec::with_capacity(2 * graph.edge_count());
        offsets.push(0);
        for u in 0..n {
            targets.extend_from_slice(graph.neighbors(u));
            weights.extend_from_slice(graph.neighbor_weights(u));
            offsets.push(targets.len());
        }
        Self {
            offsets,
            targets,
            weights,
            self_loop: vec![0.0; n],
            degree: (0..n).map(|u| graph.weighted_degree(u)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.degree.len()
    }

    fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    fn modularity(&self, community: &[usize], two_mu: f64) -> f64 {
        let c = community.iter().max().map_or(0, |&m| m + 1);
        let mut internal = vec![0.0; c];
        let mut total = vec![0.0; c];
        for u in 0..self.len() {
            let cu = community[u];
            total[cu] += self.degree[u];
            internal[cu] += self.self_loop[u];
            for (v, w) in self.neighbors(u) {
                if community[v] == cu {
                    internal[cu] += w;
                }
            }
        }
        internal
            .iter()
            .zip(&total)
            .map(|(&inside, &tot)| inside / two_mu - (tot / two_mu).powi(2))
            .sum()
    }

    /// Local moving phase. Returns the community of every node and whether
    /// any node changed community.
    fn move_nodes(&self, order: &[usize], two_mu: f64, min_gain: f64, trace: &mut LouvainTrace) -> (Vec<usize>, bool) {
        let n = self.len();
        let mut community: Vec<usize> = (0..n).collect();
        let mut total = self.degree.clone();
        let mut link = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut current = self.modularity(&community, two_mu);
        let mut any_moved = false;

        loop {
            let mut moved = false;
            for &u in order {
                let own = community[u];
                let k = self.degree[u];
                for (v, w) in self.neighbors(u) {
                    let c = community[v];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += w;
                }
                total[own] -= k;

                // Gain of joining community c, up to a shared positive factor.
                let gain = |c: usize| link[c] - total[c] * k / two_mu;
                let mut best = own;
                let mut best_gain = gain(own);
                touched.sort_unstable();
                for &c in &touched {
                    if c == own {
                        continue;
                    }
                    let g = gain(c);
                    if g - best_gain > TIE_TOLERANCE * (1.0 + k) {
                        best = c;
                        best_gain = g;
                    }
                }

                total[best] += k;
                if best != own {
                    community[u] = best;
                    moved = true;
                }
                for &c in &touched {
                    link[c] = 0.0;
                }
                touched.clear();
            }

            let next = self.modularity(&community, two_mu);
            debug_assert!(next >= current - 1e-9, "modularity decreased within a sweep");
            trace.sweep_modularity.push(next);
            any_moved |= moved;
            let improvement = next - current;
            current = next;
            if !moved || improvement <= min_gain {
                break;
            }
        }
        (community, any_moved)
    }

    /// Collapses every community of `partition` into one node.
    fn aggregate(&self, partition: &Partition) -> Level {
        let c = partition.community_count();
        let mut self_loop = vec![0.0; c];
        let mut degree = vec![0.0; c];
        let mut arcs: Vec<(usize, usize, f64)> = Vec::new();
        for u in 0..self.len() {
            let cu = partition.community_of(u);
            self_loop[cu] += self.self_loop[u];
            degree[cu] += self.degree[u];
            for (v, w) in self.neighbors(u) {
                let cv = partition.community_of(v);
                if cu == cv {
                    self_loop[cu] += w;
                } else {
                    arcs.push((cu, cv, w));
                }
            }
        }
        arcs.sort_by_key(|a| (a.0, a.1));

        let mut offsets = vec![0; c + 1];
        let mut targets = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        let mut last: Option<(usize, usize)> = None;
        for (a, b, w) in arcs {
            if last == Some((a, b)) {
                *weights.last_mut().unwrap() += w;
            } else {
                targets.push(b);
                weights.push(w);
                offsets[a + 1] += 1;
                last = Some((a, b));
            }
        }
        for i in 0..c {
            offsets[i + 1] += offsets[i];
        }
        Level {
            offsets,
            targets,
            weights,
            self_loop,
            degree,
        }
    }
}
