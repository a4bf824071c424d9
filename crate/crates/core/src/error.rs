use thiserror::Error;

use crate::graph::VertexRef;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({x}, {y}) out of range for a {n_x}+{n_y} graph")]
    InvalidEdge {
        x: usize,
        y: usize,
        n_x: usize,
        n_y: usize,
    },

    #[error("vertex {0} does not exist in this graph")]
    InvalidVertex(VertexRef),

    #[error("deletion set is not balanced: {x} X-vertices, {y} Y-vertices (or repeated indices)")]
    UnbalancedDeletion { x: usize, y: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph has an empty part")]
    EmptyPart,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: String, limit: usize },

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("invalid endpoints: {0}")]
    InvalidEndpoints(String),

    #[error("part sizes {n_x} and {n_y} differ by more than one")]
    NotNearlyBalanced { n_x: usize, n_y: usize },

    #[error("part sizes {n_x} and {n_y} are not equal")]
    NotBalanced { n_x: usize, n_y: usize },

    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    ConvergenceFailure { iterations: usize, residual: f64 },

    #[error("bracket [{lo}, {hi}] does not isolate a sign change")]
    BracketError { lo: f64, hi: f64 },

    #[error("second graph is not a subgraph of the first")]
    NotSubgraph,

    #[error("catalog path {label} is malformed: {reason}")]
    CatalogDefect { label: String, reason: String },

    #[error("corrupt sweep record: {0}")]
    CorruptRecord(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
