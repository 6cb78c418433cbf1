use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("no ST-paths")]
    NoStPaths,

    #[error("tau must lie in (0, 1], got {0}")]
    InvalidTau(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle restricted to small instances (graph has {vertices} vertices, limit {limit})")]
    OracleTooLarge { vertices: usize, limit: usize },

    #[error("scaffold inconsistency at vertex {vertex}: {reason}")]
    ScaffoldInconsistency { vertex: String, reason: String },

    #[error("graph is not acyclic")]
    Cyclic,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal consistency check failed. Indicates a bug rather than bad input.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
