//! Clustering quality against ground truth, and per-run evaluation reports.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{modularity, Partition};
use crate::pipeline::PipelineTrace;

fn check_same_nodes(a: &Partition, b: &Partition) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::NodeSetMismatch {
            expected: b.len(),
            found: a.len(),
        });
    }
    Ok(())
}

/// Nonzero cells of the contingency table, as `((row, col), count)`.
fn contingency(a: &Partition, b: &Partition) -> HashMap<(usize, usize), usize> {
    let mut cells = HashMap::new();
    for (&x, &y) in a.assignment().iter().zip(b.assignment()) {
        *cells.entry((x, y)).or_insert(0) += 1;
    }
    cells
}

fn cluster_sizes(p: &Partition) -> Vec<usize> {
    let mut sizes = vec![0; p.community_count()];
    for &c in p.assignment() {
        sizes[c] += 1;
    }
    sizes
}

fn entropy(sizes: &[usize], n: f64) -> f64 {
    sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information `2 I(P;T) / (H(P) + H(T))`, natural log.
///
/// Two single-cluster partitions score 1; a single-cluster partition against
/// anything else scores 0.
pub fn nmi(p: &Partition, truth: &Partition) -> Result<f64> {
    check_same_nodes(p, truth)?;
    if p.is_empty() {
        return Ok(1.0);
    }
    let n = p.len() as f64;
    let a = cluster_sizes(p);
    let b = cluster_sizes(truth);
    let (ha, hb) = (entropy(&a, n), entropy(&b, n));
    if ha + hb == 0.0 {
        return Ok(1.0);
    }
    let mutual: f64 = contingency(p, truth)
        .into_iter()
        .map(|((x, y), count)| {
            let joint = count as f64 / n;
            joint * (count as f64 * n / (a[x] as f64 * b[y] as f64)).ln()
        })
        .sum();
    Ok((2.0 * mutual / (ha + hb)).clamp(0.0, 1.0))
}

fn pairs(count: usize) -> u64 {
    let c = count as u64;
    c * c.saturating_sub(1) / 2
}

/// Pairwise F-score with `p` as the prediction: precision and recall over
/// node pairs placed together. Zero when either side has no co-clustered pair.
pub fn pairwise_f_score(p: &Partition, truth: &Partition) -> Result<f64> {
    check_same_nodes(p, truth)?;
    let true_positive: u64 = contingency(p, truth).values().map(|&c| pairs(c)).sum();
    let predicted: u64 = cluster_sizes(p).into_iter().map(pairs).sum();
    let actual: u64 = cluster_sizes(truth).into_iter().map(pairs).sum();
    if predicted == 0 || actual == 0 || true_positive == 0 {
        return Ok(0.0);
    }
    let precision = true_positive as f64 / predicted as f64;
    let recall = true_positive as f64 / actual as f64;
    Ok(2.0 * precision * recall / (precision + recall))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub dataset: String,
    pub method: String,
    pub k: usize,
    pub seed: u64,
    pub node_count: usize,
    pub edge_count: usize,
    pub community_count: usize,
    pub nmi: Option<f64>,
    pub f_score: Option<f64>,
    /// Modularity of the result on the input network.
    pub modularity_original: f64,
    /// Modularity of the result on the rewired network, for EdMot runs.
    pub modularity_rewired: Option<f64>,
    pub trace: Option<PipelineTrace>,
    pub wall_time_seconds: f64,
}

/// Identification of a run, copied into its report.
#[derive(Clone, Debug, Default)]
pub struct RunInfo {
    pub dataset: String,
    pub method: String,
    pub k: usize,
    pub seed: u64,
    pub wall_time_seconds: f64,
}

pub fn evaluate(
    info: RunInfo,
    result: &Partition,
    g: &Graph,
    rewired: Option<&Graph>,
    truth: Option<&Partition>,
    trace: Option<PipelineTrace>,
) -> Result<EvalReport> {
    result.check_covers(g)?;
    let modularity_original = modularity(g, result)?;
    let modularity_rewired = rewired.map(|r| modularity(r, result)).transpose()?;
    let (nmi_value, f_value) = match truth {
        Some(t) => (Some(nmi(result, t)?), Some(pairwise_f_score(result, t)?)),
        None => (None, None),
    };
    Ok(EvalReport {
        dataset: info.dataset,
        method: info.method,
        k: info.k,
        seed: info.seed,
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        community_count: result.community_count(),
        nmi: nmi_value,
        f_score: f_value,
        modularity_original,
        modularity_rewired,
        trace,
        wall_time_seconds: info.wall_time_seconds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(labels: &[usize]) -> Partition {
        Partition::from_labels(labels.iter().copied())
    }

    #[test]
    fn identical_partitions_score_one() {
        let p = part(&[0, 0, 1, 1, 2]);
        assert!((nmi(&p, &p).unwrap() - 1.0).abs() < 1e-12);
        assert!((pairwise_f_score(&p, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_cluster_against_two() {
        let truth = part(&[0, 0, 1, 1]);
        let all = Partition::single_community(4);
        assert_eq!(nmi(&all, &truth).unwrap(), 0.0);
        assert_eq!(nmi(&all, &all).unwrap(), 1.0);
    }

    #[test]
    fn singletons_have_zero_f() {
        let truth = part(&[0, 0, 1, 1]);
        assert_eq!(pairwise_f_score(&Partition::singletons(4), &truth).unwrap(), 0.0);
    }

    #[test]
    fn f_score_worked_case() {
        let p = part(&[0, 0, 0, 1]);
        let truth = part(&[0, 0, 1, 1]);
        assert!((pairwise_f_score(&p, &truth).unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let err = nmi(&part(&[0, 1]), &part(&[0, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::NodeSetMismatch { .. }));
        assert!(pairwise_f_score(&part(&[0]), &part(&[0, 1])).is_err());
    }

    #[test]
    fn report_fields_follow_truth() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let p = part(&[0, 0, 1, 1]);
        let r = evaluate(RunInfo::default(), &p, &g, None, None, None).unwrap();
        assert!(r.nmi.is_none() && r.f_score.is_none());
        assert!(r.modularity_original > 0.0);
        let r = evaluate(RunInfo::default(), &p, &g, Some(&g), Some(&p), None).unwrap();
        assert_eq!(r.nmi, Some(1.0));
        assert_eq!(r.f_score, Some(1.0));
        assert_eq!(r.modularity_rewired, Some(r.modularity_original));
        assert!(evaluate(RunInfo::default(), &part(&[0, 0]), &g, None, None, None).is_err());
    }
}
