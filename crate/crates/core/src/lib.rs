//! Motif-aware community detection by edge enhancement.
//!
//! The pipeline builds the triangle co-occurrence graph of a network,
//! partitions its largest connected components into modules, adds a clique
//! over every module to the original network and partitions the rewired
//! network. Louvain is the bundled partitioner; NMI, pairwise F-score and
//! modularity are provided for evaluation.

pub mod bench;
pub mod components;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod motif;
pub mod partition;
pub mod pipeline;

pub use components::{
    connected_components, fragmentation_report, motif_components, top_k_components, ComponentSet, FragmentationReport,
};
pub use error::{Error, Result, Stage};
pub use graph::{
    graph_stats, largest_connected_component, parse_edge_list, write_edge_list, Graph, GraphStats, LabelMap, NodeId,
    ParseOptions,
};
pub use metrics::{evaluate, nmi, pairwise_f_score, EvalReport, RunInfo};
pub use motif::{
    brute_force_motif_adjacency, build_motif_adjacency, enumerate_triangles, MotifAdjacency, MotifDescriptor,
};
pub use partition::{louvain, modularity, Louvain, Partition, Partitioner, PartitionerConfig};
pub use pipeline::{
    clique_edge_set, detect, partition_components_to_modules, rewire_network, run_edmot, Detection, EdgeSet, EdmotRun,
    Method, ModuleSet, PipelineTrace,
};
