use thiserror::Error;

/// Errors surfaced by graph construction, decomposition validation and the
/// compression schemes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid NLC decomposition: {0}")]
    InvalidNlc(String),

    #[error("sample is not realizable by any hyperedge of the family")]
    UnrealizableSample,

    #[error("sample sets overlap on vertex {0}")]
    OverlappingSample(usize),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("malformed code: {0}")]
    MalformedCode(String),

    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
