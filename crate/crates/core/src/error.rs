use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph6: {reason} at byte {offset}")]
    Graph6 { offset: usize, reason: &'static str },

    #[error("graph order {0} exceeds the 2^16 vertex cap")]
    TooManyVertices(usize),

    #[error("vertex {v} out of range for graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("vertices {u} and {v} are not adjacent")]
    NotAnEdge { u: usize, v: usize },

    #[error("vertex {0} paired with itself where distinct vertices are required")]
    IdenticalVertices(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation undefined on the empty graph")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("eigenvalue iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("pattern on {got} vertices exceeds the {limit}-vertex engine limit")]
    PatternTooLarge { got: usize, limit: usize },

    #[error("host graph on {got} vertices exceeds the {limit}-vertex oracle limit")]
    HostTooLarge { got: usize, limit: usize },

    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { got: usize, expected: usize },

    #[error("infeasible move: {0}")]
    InfeasibleMove(String),

    #[error("built-in enumeration stops at n = {limit}; pipe a graph6 stream for n = {got}")]
    EnumerationTooLarge { got: usize, limit: usize },

    #[error("graph stream mixes orders {0} and {1}")]
    MixedOrders(usize, usize),

    #[error("local search start graph already contains a K_{{2,{0}}} minor")]
    StartNotMinorFree(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
