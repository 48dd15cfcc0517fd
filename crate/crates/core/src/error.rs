use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Pipeline stage names used to tag errors raised inside [`crate::pipeline::run_edmot`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    MotifAdjacency,
    Components,
    ModulePartition,
    CliqueEdges,
    Rewire,
    FinalPartition,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::MotifAdjacency => "motif adjacency",
            Stage::Components => "components",
            Stage::ModulePartition => "module partition",
            Stage::CliqueEdges => "clique edges",
            Stage::Rewire => "rewire",
            Stage::FinalPartition => "final partition",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no nodes")]
    EmptyInput,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("node {node} is out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("edge weight must be finite and positive, got {0}")]
    InvalidWeight(f64),

    #[error("unsupported motif M({nodes},{edges}): only the triangle M(3,3) is implemented")]
    UnsupportedMotif { nodes: usize, edges: usize },

    #[error("brute-force oracle limited to {cap} nodes, graph has {node_count}")]
    OracleCapExceeded { node_count: usize, cap: usize },

    #[error("top-k requires k >= 1")]
    InvalidTopK,

    #[error("node sets differ: expected {expected} nodes, found {found}")]
    NodeSetMismatch { expected: usize, found: usize },

    #[error("total edge weight is zero")]
    ZeroTotalWeight,

    #[error("partition assigns {assigned} of {node_count} nodes")]
    IncompletePartition { assigned: usize, node_count: usize },

    #[error("invalid partitioner config: {0}")]
    InvalidConfig(String),

    #[error("missing label for node `{0}`")]
    MissingLabel(String),

    #[error("component {component}: {source}")]
    Component {
        component: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn in_stage(stage: Stage) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
