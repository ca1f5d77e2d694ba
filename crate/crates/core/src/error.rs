use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("vertex ids must be dense 0..N-1, found id {found} at position {position}")]
    NonDenseIds { position: usize, found: VertexId },
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteCoordinate(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("agent count mismatch: {0} vs {1}")]
    AgentCountMismatch(usize, usize),
    #[error("assignment needs at least one agent")]
    NoAgents,
    #[error("vertex {vertex} used by agents {first} and {second}")]
    DuplicatePosition {
        vertex: VertexId,
        first: usize,
        second: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("goal {goal} of agent {agent} is unreachable from its start {start}")]
    Unreachable {
        agent: usize,
        start: VertexId,
        goal: VertexId,
    },
    #[error("cannot place {agents} agents on {vertices} vertices")]
    TooManyAgents { agents: usize, vertices: usize },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed file: {0}")]
    Malformed(String),
}
