mod common;

use std::collections::BTreeSet;

use common::gnp;
use edmot::graph::DuplicateRule;
use edmot::{largest_connected_component, parse_edge_list, write_edge_list, Graph, LabelMap, ParseOptions};
use proptest::prelude::*;

fn labeled_edges(g: &Graph, labels: &LabelMap) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|(u, v, _)| {
            let (a, b) = (labels.label(u).to_owned(), labels.label(v).to_owned());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

fn parse(text: &str) -> (Graph, LabelMap) {
    parse_edge_list(text.as_bytes(), &ParseOptions::default()).unwrap()
}

#[test]
fn string_labels_and_comments() {
    let (g, labels) = parse("% header\n# more\nalice bob\n\nbob carol\n  carol alice  \nalice bob\n");
    assert_eq!(g.node_count(), 3);
    assert_eq!(g.edge_count(), 3);
    assert_eq!(labels.labels(), ["alice", "bob", "carol"]);
    assert_eq!(g.total_weight(), 3.0);
}

#[test]
fn self_loops_keep_the_node_but_not_the_edge() {
    let (g, labels) = parse("1 1\n1 2\n");
    assert_eq!(g.node_count(), 2);
    assert_eq!(g.edge_count(), 1);
    assert_eq!(labels.id("1"), Some(0));
}

#[test]
fn weighted_duplicates_sum() {
    let opts = ParseOptions {
        weighted: true,
        delimiter: Some(','),
        ..Default::default()
    };
    let (g, _) = parse_edge_list("a,b,1.5\nb,a,2\nb,c\n".as_bytes(), &opts).unwrap();
    assert_eq!(g.edge_weight(0, 1), Some(3.5));
    assert_eq!(g.edge_weight(1, 2), Some(1.0));
    assert!(parse_edge_list("a,b,-1\n".as_bytes(), &opts).is_err());
    assert!(parse_edge_list("a,b,x\n".as_bytes(), &opts).is_err());
}

#[test]
fn lcc_is_connected_and_maps_back() {
    for seed in 0..20 {
        let g = gnp(60, 0.03, seed);
        let (sub, nodes) = largest_connected_component(&g).unwrap();
        assert!(sub.is_connected());
        assert_eq!(sub.node_count(), nodes.len());
        let (labels, count) = g.component_labels();
        let mut sizes = vec![0; count];
        for &c in &labels {
            sizes[c] += 1;
        }
        assert_eq!(nodes.len(), *sizes.iter().max().unwrap());
        for (u, v, _) in sub.edges() {
            assert!(g.has_edge(nodes[u], nodes[v]));
        }
        let inside = nodes.iter().map(|&u| g.neighbors(u).len()).sum::<usize>();
        assert_eq!(inside, 2 * sub.edge_count());
    }
}

#[test]
fn lcc_tie_goes_to_smallest_node() {
    let g = Graph::from_edges(6, [(4, 5), (0, 3), (1, 2)]).unwrap();
    let (_, nodes) = largest_connected_component(&g).unwrap();
    assert_eq!(nodes, vec![0, 3]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn write_then_parse_round_trips(
        raw in prop::collection::vec((0u32..30, 0u32..30), 1..120),
        prefix in "[a-z]{0,3}",
    ) {
        let text: String = raw.iter().map(|(a, b)| format!("{prefix}{a}\t{prefix}{b}\n")).collect();
        let (g, labels) = parse(&text);
        let mut out = Vec::new();
        write_edge_list(&g, &labels, false, &mut out).unwrap();
        let (g2, labels2) = parse_edge_list(out.as_slice(), &ParseOptions::default())
            .unwrap_or_else(|_| (Graph::from_edges(0, []).unwrap(), LabelMap::new()));
        prop_assert_eq!(labeled_edges(&g, &labels), labeled_edges(&g2, &labels2));

        let expected: BTreeSet<(String, String)> = raw
            .iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| {
                let (x, y) = (format!("{prefix}{a}"), format!("{prefix}{b}"));
                if x <= y { (x, y) } else { (y, x) }
            })
            .collect();
        prop_assert_eq!(labeled_edges(&g, &labels), expected);
    }

    #[test]
    fn parsing_is_deterministic(raw in prop::collection::vec((0u32..20, 0u32..20), 1..60)) {
        let text: String = raw.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
        let (g1, l1) = parse(&text);
        let (g2, l2) = parse(&text);
        prop_assert_eq!(g1, g2);
        prop_assert_eq!(l1, l2);
    }

    #[test]
    fn weighted_round_trip_preserves_weights(
        raw in prop::collection::vec((0usize..12, 0usize..12, 1u32..9), 1..40),
    ) {
        let g = Graph::from_weighted_edges(12, raw.iter().map(|&(a, b, w)| (a, b, w as f64)), DuplicateRule::Sum).unwrap();
        let labels = LabelMap::identity(12);
        let mut out = Vec::new();
        write_edge_list(&g, &labels, true, &mut out).unwrap();
        let opts = ParseOptions { weighted: true, ..Default::default() };
        if let Ok((g2, l2)) = parse_edge_list(out.as_slice(), &opts) {
            for (u, v, w) in g.edges() {
                let (a, b) = (l2.id(labels.label(u)).unwrap(), l2.id(labels.label(v)).unwrap());
                prop_assert_eq!(g2.edge_weight(a, b), Some(w));
            }
            prop_assert_eq!(g2.edge_count(), g.edge_count());
        } else {
            prop_assert_eq!(g.edge_count(), 0);
        }
    }
}
