//! Edge-enhancement pipeline: partition the largest motif components into
//! modules, turn each module into a clique, add those cliques to the
//! original network and partition the result.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::components::{motif_components, top_k_components};
use crate::error::{Error, Result, Stage};
use crate::graph::{Graph, NodeId};
use crate::motif::{build_motif_adjacency, MotifAdjacency, MotifDescriptor};
use crate::partition::{Partition, Partitioner, PartitionerConfig};

/// Disjoint node sets found inside the top-K motif components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleSet {
    pub modules: Vec<Vec<NodeId>>,
}

impl ModuleSet {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn covered_nodes(&self) -> usize {
        self.modules.iter().map(Vec::len).sum()
    }
}

/// Sorted, duplicate-free unordered node pairs `(a, b)` with `a < b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet {
    pairs: Vec<(NodeId, NodeId)>,
}

impl EdgeSet {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(NodeId, NodeId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Partitions the subgraph of `h` induced by each component and gathers
/// the resulting communities as modules, in component order.
pub fn partition_components_to_modules(
    h: &MotifAdjacency,
    components: &[Vec<NodeId>],
    partitioner: &dyn Partitioner,
    cfg: &PartitionerConfig,
) -> Result<ModuleSet> {
    let mut modules = Vec::new();
    for (index, nodes) in components.iter().enumerate() {
        let in_component = |source| Error::Component {
            component: index,
            source: Box::new(source),
        };
        let sub = h.graph().induced_subgraph(nodes).map_err(in_component)?;
        let local = partitioner.partition(&sub, cfg).map_err(in_component)?;
        local.check_covers(&sub).map_err(in_component)?;
        for members in local.communities() {
            let mut module: Vec<NodeId> = members.into_iter().map(|i| nodes[i]).collect();
            module.sort_unstable();
            modules.push(module);
        }
    }
    Ok(ModuleSet { modules })
}

/// All node pairs inside each module.
pub fn clique_edge_set(modules: &ModuleSet) -> EdgeSet {
    EdgeSet::from_pairs(modules.modules.iter().flat_map(|m| {
        m.iter()
            .enumerate()
            .flat_map(move |(i, &a)| m[i + 1..].iter().map(move |&b| (a, b)))
    }))
}

/// Unweighted union of the edges of `g` and `extra`.
pub fn rewire_network(g: &Graph, extra: &EdgeSet) -> Result<Graph> {
    let n = g.node_count();
    for &(a, b) in extra.pairs() {
        if b >= n {
            return Err(Error::NodeOutOfRange {
                node: a.max(b),
                node_count: n,
            });
        }
    }
    let mut edges: Vec<(NodeId, NodeId, f64)> = g
        .edges()
        .map(|(u, v, _)| (u, v, 1.0))
        .chain(extra.pairs().iter().map(|&(a, b)| (a, b, 1.0)))
        .collect();
    edges.sort_by_key(|x| (x.0, x.1));
    edges.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
    Ok(Graph::from_canonical(n, &edges))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: Stage,
    pub seconds: f64,
}

/// Sizes observed at each step of a run.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PipelineTrace {
    pub triangle_count: u64,
    pub component_count: usize,
    pub isolated_count: usize,
    pub selected_components: usize,
    pub module_count: usize,
    pub clique_edge_count: usize,
    /// Edge count of the rewired network.
    pub rewired_edge_count: usize,
    /// Edges of the rewired network that were not in the input.
    pub added_edge_count: usize,
    pub stage_times: Vec<StageTiming>,
}

impl PipelineTrace {
    /// The trace without timings, which vary from run to run.
    pub fn counts(&self) -> PipelineTrace {
        PipelineTrace {
            stage_times: Vec::new(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdmotRun {
    pub partition: Partition,
    pub modules: ModuleSet,
    pub rewired: Graph,
    pub trace: PipelineTrace,
}

fn timed<T>(trace: &mut PipelineTrace, stage: Stage, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f().map_err(Error::in_stage(stage))?;
    trace.stage_times.push(StageTiming {
        stage,
        seconds: start.elapsed().as_secs_f64(),
    });
    Ok(out)
}

/// Runs the full pipeline on `g` with the `k` largest motif components.
pub fn run_edmot(g: &Graph, k: usize, partitioner: &dyn Partitioner, cfg: &PartitionerConfig) -> Result<EdmotRun> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if k == 0 {
        return Err(Error::InvalidTopK);
    }
    let mut trace = PipelineTrace::default();

    let h = timed(&mut trace, Stage::MotifAdjacency, || {
        build_motif_adjacency(g, MotifDescriptor::TRIANGLE)
    })?;
    trace.triangle_count = h.triangle_count();

    let cs = timed(&mut trace, Stage::Components, || Ok(motif_components(&h)))?;
    let selected = top_k_components(&cs, k)?;
    trace.component_count = cs.component_count();
    trace.isolated_count = cs.isolated.len();
    trace.selected_components = selected.len();

    let modules = timed(&mut trace, Stage::ModulePartition, || {
        partition_components_to_modules(&h, selected, partitioner, cfg)
    })?;
    trace.module_count = modules.len();

    let cliques = timed(&mut trace, Stage::CliqueEdges, || Ok(clique_edge_set(&modules)))?;
    trace.clique_edge_count = cliques.len();

    let rewired = timed(&mut trace, Stage::Rewire, || rewire_network(g, &cliques))?;
    trace.rewired_edge_count = rewired.edge_count();
    trace.added_edge_count = rewired.edge_count() - g.edge_count();

    let partition = timed(&mut trace, Stage::FinalPartition, || {
        let p = partitioner.partition(&rewired, cfg)?;
        p.check_covers(&rewired)?;
        Ok(p)
    })?;

    Ok(EdmotRun {
        partition,
        modules,
        rewired,
        trace,
    })
}

/// Which network the partitioner sees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The input network itself.
    Plain,
    /// The motif co-occurrence graph; nodes in no triangle stay singletons.
    Motif,
    /// The input network enhanced with module cliques.
    Edmot,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Plain, Method::Motif, Method::Edmot];

    /// Row label in comparison tables, e.g. `EdMot-Louvain`.
    pub fn display_name(&self, partitioner: &str) -> String {
        match self {
            Method::Plain => partitioner.to_owned(),
            Method::Motif => format!("Motif-{partitioner}"),
            Method::Edmot => format!("EdMot-{partitioner}"),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Plain => "plain",
            Method::Motif => "motif",
            Method::Edmot => "edmot",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Method::Plain),
            "motif" => Ok(Method::Motif),
            "edmot" => Ok(Method::Edmot),
            other => Err(format!("unknown method `{other}` (expected edmot, plain or motif)")),
        }
    }
}

/// Result of one detection run with any of the three methods.
#[derive(Clone, Debug)]
pub struct Detection {
    pub method: Method,
    pub partition: Partition,
    /// Present for [`Method::Edmot`].
    pub rewired: Option<Graph>,
    pub trace: Option<PipelineTrace>,
}

pub fn detect(
    g: &Graph,
    method: Method,
    k: usize,
    partitioner: &dyn Partitioner,
    cfg: &PartitionerConfig,
) -> Result<Detection> {
    match method {
        Method::Plain => {
            let partition = partitioner.partition(g, cfg)?;
            partition.check_covers(g)?;
            Ok(Detection {
                method,
                partition,
                rewired: None,
                trace: None,
            })
        }
        Method::Motif => {
            let h =
                build_motif_adjacency(g, MotifDescriptor::TRIANGLE).map_err(Error::in_stage(Stage::MotifAdjacency))?;
            let partition = if h.graph().edge_count() == 0 {
                Partition::singletons(g.node_count())
            } else {
                let p = partitioner.partition(h.graph(), cfg)?;
                p.check_covers(h.graph())?;
                p
            };
            Ok(Detection {
                method,
                partition,
                rewired: None,
                trace: None,
            })
        }
        Method::Edmot => {
            let run = run_edmot(g, k, partitioner, cfg)?;
            Ok(Detection {
                method,
                partition: run.partition,
                rewired: Some(run.rewired),
                trace: Some(run.trace),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Louvain;

    fn complete_on(nodes: &[NodeId]) -> Vec<(NodeId, NodeId)> {
        let mut edges = Vec::new();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                edges.push((a, b));
            }
        }
        edges
    }

    #[test]
    fn clique_pairs() {
        let ms = |m: Vec<Vec<NodeId>>| ModuleSet { modules: m };
        assert_eq!(
            clique_edge_set(&ms(vec![vec![0, 1, 2]])).pairs(),
            &[(0, 1), (0, 2), (1, 2)]
        );
        assert_eq!(clique_edge_set(&ms(vec![vec![4, 7]])).pairs(), &[(4, 7)]);
        assert_eq!(clique_edge_set(&ms(vec![vec![0, 1], vec![2, 3, 4]])).len(), 4);
        assert!(clique_edge_set(&ms(vec![vec![5]])).is_empty());
    }

    #[test]
    fn rewire_union() {
        let k3 = Graph::from_edges(3, complete_on(&[0, 1, 2])).unwrap();
        let es = EdgeSet::from_pairs(complete_on(&[0, 1, 2]));
        assert_eq!(rewire_network(&k3, &es).unwrap(), k3);

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let closed = rewire_network(&path, &EdgeSet::from_pairs([(0, 2)])).unwrap();
        assert_eq!(closed, k3);

        assert!(matches!(
            rewire_network(&path, &EdgeSet::from_pairs([(0, 3)])),
            Err(Error::NodeOutOfRange { node: 3, .. })
        ));
    }

    #[test]
    fn rewire_drops_input_weights() {
        let g = Graph::from_weighted_edges(3, [(0, 1, 5.0)], crate::graph::DuplicateRule::Sum).unwrap();
        let r = rewire_network(&g, &EdgeSet::from_pairs([(1, 2)])).unwrap();
        assert_eq!(r.edge_weight(0, 1), Some(1.0));
        assert_eq!(r.total_weight(), 2.0);
    }

    #[test]
    fn single_triangle_component_is_one_module() {
        let g = Graph::from_edges(3, complete_on(&[0, 1, 2])).unwrap();
        let h = build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap();
        let cs = motif_components(&h);
        let ms = partition_components_to_modules(&h, &cs.components, &Louvain, &PartitionerConfig::default()).unwrap();
        assert_eq!(ms.modules, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn two_k4_components_give_two_modules() {
        let mut edges = complete_on(&[0, 1, 2, 3]);
        edges.extend(complete_on(&[4, 5, 6, 7]));
        let g = Graph::from_edges(8, edges).unwrap();
        let h = build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap();
        let cs = motif_components(&h);
        let ms = partition_components_to_modules(&h, &cs.components, &Louvain, &PartitionerConfig::default()).unwrap();
        assert_eq!(ms.modules, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
    }

    #[test]
    fn no_components_no_modules() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = build_motif_adjacency(&g, MotifDescriptor::TRIANGLE).unwrap();
        let ms = partition_components_to_modules(&h, &[], &Louvain, &PartitionerConfig::default()).unwrap();
        assert!(ms.is_empty());
    }

    #[test]
    fn pipeline_errors_name_the_stage() {
        struct Broken;
        impl Partitioner for Broken {
            fn name(&self) -> &str {
                "broken"
            }
            fn partition(&self, g: &Graph, _: &PartitionerConfig) -> Result<Partition> {
                Ok(Partition::singletons(g.node_count() - 1))
            }
        }
        let g = Graph::from_edges(3, complete_on(&[0, 1, 2])).unwrap();
        let err = run_edmot(&g, 1, &Broken, &PartitionerConfig::default()).unwrap_err();
        assert!(
            matches!(&err, Error::Stage { stage: Stage::ModulePartition, source } if matches!(**source, Error::Component { component: 0, .. })),
            "{err}"
        );
        assert!(err.to_string().starts_with("module partition stage failed"));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("EdMot".parse::<Method>().unwrap(), Method::Edmot);
        assert!("sc".parse::<Method>().is_err());
        assert_eq!(Method::Motif.display_name("Louvain"), "Motif-Louvain");
    }
}
