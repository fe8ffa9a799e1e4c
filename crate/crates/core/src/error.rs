use thiserror::Error;

/// A topology record that failed validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("self-loop on node `{node}`")]
    SelfLoop { node: String },
    #[error("duplicate link `{u}` - `{v}`")]
    DuplicateLink { u: String, v: String },
    #[error("link `{u}` - `{v}` has non-positive or non-finite distance {distance_km}")]
    BadDistance {
        u: String,
        v: String,
        distance_km: f64,
    },
    #[error("link `{u}` - `{v}` references unknown node `{node}`")]
    UnknownEndpoint { u: String, v: String, node: String },
    #[error("duplicate node id `{node}`")]
    DuplicateNode { node: String },
    #[error("node `{node}` has reliability {value} outside [0.5, 1.0]")]
    BadReliability { node: String, value: f64 },
    #[error("topology needs at least 2 nodes and 1 link (got {nodes} nodes, {links} links)")]
    TooSmall { nodes: usize, links: usize },
    #[error("graph is disconnected: {} components, representatives {}", .representatives.len(), .representatives.join(", "))]
    Disconnected { representatives: Vec<String> },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid topology: {0}")]
    Validation(#[from] ValidationError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("node {0} not found")]
    NodeNotFound(usize),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("eigenvector power iteration did not converge within {max_iter} iterations{}", .trial.map(|t| format!(" (trial {t})")).unwrap_or_default())]
    NoConvergence {
        max_iter: usize,
        trial: Option<usize>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
