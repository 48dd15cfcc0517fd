//! Test-only oracles. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use edmot::{Graph, NodeId, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi G(n, p) from a fixed seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Uniform random graph with exactly `m` edges (m well below n²/2).
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(m);
    while seen.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            seen.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(n, seen).unwrap()
}

pub fn complete_on(nodes: &[NodeId]) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            edges.push((a, b));
        }
    }
    edges
}

/// Dense symmetric weight matrix.
pub fn dense(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for (u, v, w) in g.edges() {
        a[u][v] = w;
        a[v][u] = w;
    }
    a
}

/// Every triangle by scanning all node triples.
pub fn triangles_by_triple_scan(g: &Graph) -> BTreeSet<(NodeId, NodeId, NodeId)> {
    let a = dense(g);
    let n = g.node_count();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a[i][j] > 0.0 && a[i][k] > 0.0 && a[j][k] > 0.0 {
                    out.insert((i, j, k));
                }
            }
        }
    }
    out
}

/// Modularity straight from the double sum over all ordered node pairs.
pub fn modularity_by_double_sum(g: &Graph, labels: &[usize]) -> f64 {
    let a = dense(g);
    let n = g.node_count();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_mu: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_mu;
            }
        }
    }
    q / two_mu
}

/// All set partitions of `n` nodes as restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for label in 0..=limit {
            prefix.push(label);
            extend(prefix, max.max(label), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(&mut Vec::new(), 0, n, &mut out);
    }
    out
}

/// Best modularity over every partition, and every partition achieving it.
pub fn exhaustive_optimum(g: &Graph) -> (f64, Vec<Vec<usize>>) {
    let mut best = f64::NEG_INFINITY;
    let mut argmax = Vec::new();
    for labels in all_partitions(g.node_count()) {
        let q = modularity_by_double_sum(g, &labels);
        if q > best + 1e-12 {
            best = q;
            argmax = vec![labels];
        } else if (q - best).abs() <= 1e-12 {
            argmax.push(labels);
        }
    }
    (best, argmax)
}

/// Pairwise F-score by enumerating every node pair.
pub fn f_score_by_pairs(p: &[usize], t: &[usize]) -> f64 {
    let (mut tp, mut pred, mut actual) = (0u64, 0u64, 0u64);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let same_p = p[i] == p[j];
            let same_t = t[i] == t[j];
            pred += same_p as u64;
            actual += same_t as u64;
            tp += (same_p && same_t) as u64;
        }
    }
    if tp == 0 || pred == 0 || actual == 0 {
        return 0.0;
    }
    let (precision, recall) = (tp as f64 / pred as f64, tp as f64 / actual as f64);
    2.0 * precision * recall / (precision + recall)
}

/// NMI evaluated from an explicit contingency table with log-sum terms.
pub fn nmi_by_table(p: &[usize], t: &[usize]) -> f64 {
    let n = p.len() as f64;
    let mut joint: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut rows: BTreeMap<usize, f64> = BTreeMap::new();
    let mut cols: BTreeMap<usize, f64> = BTreeMap::new();
    for (&a, &b) in p.iter().zip(t) {
        *joint.entry((a, b)).or_default() += 1.0 / n;
        *rows.entry(a).or_default() += 1.0 / n;
        *cols.entry(b).or_default() += 1.0 / n;
    }
    let h = |m: &BTreeMap<usize, f64>| -m.values().map(|&x| x * x.ln()).sum::<f64>();
    let (hp, ht) = (h(&rows), h(&cols));
    if hp + ht == 0.0 {
        return 1.0;
    }
    let i: f64 = joint
        .iter()
        .map(|(&(a, b), &pab)| pab * (pab / (rows[&a] * cols[&b])).ln())
        .sum();
    2.0 * i / (hp + ht)
}

pub fn same_grouping(p: &Partition, labels: &[usize]) -> bool {
    *p == Partition::from_labels(labels.iter().copied())
}
