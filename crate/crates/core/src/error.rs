use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bipartition labels {got} vertices but the graph has {expected}")]
    LabelCount { expected: usize, got: usize },

    #[error("vertex sets are not a partition: {0}")]
    NotAPartition(String),

    #[error("vertex set is not connected")]
    Disconnected,

    #[error("component of {size} vertices exceeds the enumeration limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{arcs} arcs inside the high-degree set; they must be removed first")]
    ArcsInsideX { arcs: usize },

    #[error("gap {theta} exceeds |Y| = {y} at a local minimum and |X| = {x} is over the exhaustive limit")]
    GapUnresolved { theta: i64, y: usize, x: usize },
}
