use thiserror::Error;

use crate::io::graph6::Graph6Error;

/// Errors raised by the library. Everything except [`Error::Graph6`] is a
/// usage error: the caller passed arguments outside the documented range.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },

    #[error("probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    #[error("edge count {requested} exceeds the maximum {max} for a graph of order {order}")]
    TooManyEdges { requested: usize, max: usize, order: usize },

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

impl Error {
    /// True for argument/range errors (CLI exit code 2).
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Graph6(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
