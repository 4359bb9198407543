use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge id {0} is not a live edge of this graph")]
    InvalidEdge(EdgeId),
    #[error("duplicate edge ({0}, {1}) in a simple graph")]
    DuplicateEdge(VertexId, VertexId),
    #[error("self-loop at vertex {0} in a simple graph")]
    SelfLoop(VertexId),
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("vertex {0} is not reachable from the start vertex")]
    Unreachable(VertexId),
    #[error("graph is not 2-edge-connected (edge {0} is a strong bridge)")]
    HasStrongBridge(EdgeId),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
