use thiserror::Error;

/// Errors produced by the hypergraph, spectral and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("uniformity must be at least {min}, got {k}")]
    InvalidUniformity { k: usize, min: usize },

    #[error("edge {index} has {size} distinct vertices, expected {k}")]
    EdgeSize { index: usize, size: usize, k: usize },

    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },

    #[error("edge list is empty")]
    EmptyEdgeList,

    #[error("invalid simple graph: {0}")]
    InvalidGraph(String),

    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameter out of domain: {0}")]
    OutOfDomain(String),

    #[error("hypergraph is not connected")]
    NotConnected,

    #[error("hypergraph is not unicyclic")]
    NotUnicyclic,

    #[error("invalid vertex {vertex} (hypergraph has {n} vertices)")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid edge id {edge} (hypergraph has {m} edges)")]
    InvalidEdge { edge: usize, m: usize },

    #[error("invalid edge move: {0}")]
    InvalidMove(String),

    #[error("edge pair does not match the required pattern: {0}")]
    YssPrecondition(String),

    #[error("missing or non-positive weight for vertex {vertex} in edge {edge}")]
    MissingWeight { vertex: usize, edge: usize },

    #[error("weight given for non-incident pair (vertex {vertex}, edge {edge})")]
    NonIncidentWeight { vertex: usize, edge: usize },

    #[error("power iteration did not converge after {iterations} iterations (bracket width {width:e})")]
    NonConvergence { iterations: usize, width: f64 },

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
