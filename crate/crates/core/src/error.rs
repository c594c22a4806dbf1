use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {edge:?} has {found} vertices, expected {expected}")]
    EdgeArity {
        edge: Vec<usize>,
        expected: usize,
        found: usize,
    },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex} repeated in edge {edge:?}")]
    DuplicateVertex { vertex: usize, edge: Vec<usize> },

    #[error("edge {edge:?} appears more than once")]
    DuplicateEdge { edge: Vec<usize> },

    #[error("edge list is not strictly sorted at edge {edge:?}")]
    UnsortedEdges { edge: Vec<usize> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("no connected sample found after {attempts} attempts")]
    ConnectivityUnattainable { attempts: usize },

    #[error("infeasible point: {0}")]
    Infeasible(String),

    #[error("non-finite objective at vertex slice {j}")]
    NonFinite { j: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
