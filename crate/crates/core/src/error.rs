use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n} (edge index {index})")]
    VertexOutOfRange { vertex: usize, n: usize, index: usize },
    #[error("self-loop at vertex {vertex} (edge index {index})")]
    SelfLoop { vertex: usize, index: usize },
    #[error("vertex count {0} unsupported (must be in 1..=64)")]
    BadVertexCount(usize),
    #[error("collection must hold between 1 and 64 graphs, got {0}")]
    BadGraphCount(usize),
    #[error("graph {index} has {found} vertices, expected {expected}")]
    VertexCountMismatch { index: usize, expected: usize, found: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("sequence repeats vertex {0}")]
    RepeatedVertex(usize),
    #[error("pair ({0}, {1}) is not an edge of any allowed graph")]
    NotAnEdge(usize, usize),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("infeasible generator spec: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
