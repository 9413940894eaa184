use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A graph request that would break regularity, simplicity or connectivity.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("state is bound to a different graph")]
    GraphMismatch,

    #[error("state has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("state is not self-flip (max deviation {deviation:e})")]
    NotSelfFlip { deviation: f64 },

    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),

    #[error("circulation violates {property} at vertex {vertex}")]
    InvalidCirculation {
        vertex: usize,
        property: &'static str,
    },

    #[error("not a flip state: nonzero average amplitude at vertex {vertex}")]
    NotFlipState { vertex: usize },

    #[error("network is infeasible: current cannot flow")]
    Infeasible,

    #[error("dimension {dim} exceeds the dense-solver ceiling {ceiling}")]
    Capacity { dim: usize, ceiling: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn graph(msg: impl Into<String>) -> Self {
        Error::InvalidGraph(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
