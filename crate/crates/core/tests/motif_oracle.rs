mod common;

use common::{gnp, triangles_by_triple_scan};
use edmot::motif::count_triangles;
use edmot::{
    brute_force_motif_adjacency, build_motif_adjacency, enumerate_triangles, Graph, MotifAdjacency, MotifDescriptor,
};
use proptest::prelude::*;

fn check_invariants(g: &Graph, h: &MotifAdjacency) {
    let hg = h.graph();
    assert_eq!(hg.node_count(), g.node_count());
    for u in 0..hg.node_count() {
        assert!(hg.edge_weight(u, u).is_none(), "diagonal must be zero");
        for (v, w) in hg.weighted_neighbors(u) {
            assert_eq!(hg.edge_weight(v, u), Some(w), "asymmetric at ({u},{v})");
            assert!(g.has_edge(u, v), "motif weight on a non-edge ({u},{v})");
        }
    }
    let triangles = triangles_by_triple_scan(g).len() as f64;
    assert_eq!(hg.total_weight(), 3.0 * triangles);
}

#[test]
fn enumeration_matches_triple_scan_on_gnp_40() {
    for seed in 0..20 {
        let g = gnp(40, 0.2, seed);
        let found: Vec<_> = enumerate_triangles(&g).collect();
        let expected: Vec<_> = triangles_by_triple_scan(&g).into_iter().collect();
        assert_eq!(found, expected, "seed {seed}");
        assert_eq!(count_triangles(&g), expected.len() as u64);
    }
}

#[test]
fn motif_adjacency_matches_oracle_on_gnp_40() {
    for seed in 100..120 {
        let g = gnp(40, 0.2, seed);
        let fast = build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap();
        assert_eq!(fast, brute_force_motif_adjacency(&g).unwrap(), "seed {seed}");
        check_invariants(&g, &fast);
    }
}

#[test]
fn ordered_pair_weight_is_six_per_triangle() {
    let g = gnp(30, 0.3, 7);
    let h = build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap();
    let ordered: f64 = (0..g.node_count()).map(|u| h.graph().weighted_degree(u)).sum();
    assert_eq!(ordered, 6.0 * enumerate_triangles(&g).count() as f64);
}

#[test]
fn k3_oracle_agrees() {
    let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(
        build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap(),
        brute_force_motif_adjacency(&g).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fast_equals_brute_force(n in 5usize..=50, p in 0.05f64..=0.5, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        let fast = build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap();
        prop_assert_eq!(&fast, &brute_force_motif_adjacency(&g).unwrap());
        check_invariants(&g, &fast);
    }

    #[test]
    fn enumeration_is_independent_of_edge_order(edges in proptest::collection::vec((0usize..12, 0usize..12), 0..50)) {
        let forward = Graph::from_edges(12, edges.iter().copied()).unwrap();
        let backward = Graph::from_edges(12, edges.iter().rev().map(|&(a, b)| (b, a))).unwrap();
        let a: Vec<_> = enumerate_triangles(&forward).collect();
        let b: Vec<_> = enumerate_triangles(&backward).collect();
        prop_assert_eq!(a, b);
    }
}
