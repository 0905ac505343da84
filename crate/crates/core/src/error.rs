use thiserror::Error;

use crate::graph::EdgeRef;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be in 1..={max}, got {n}")]
    InvalidVertexCount { n: usize, max: usize },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0} does not exist")]
    NoSuchEdge(EdgeRef),
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeRef),
    #[error("operation requires a loop-free graph")]
    LoopsPresent,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} is not in the vertex set")]
    VertexNotInSet(usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("threshold m = {m} is outside 1..={n}")]
    InvalidThreshold { m: usize, n: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value {value} at vertex {vertex} is out of range")]
    InvalidValue { vertex: usize, value: i64 },
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("not a multiparking function: {0}")]
    InvalidFunction(String),
    #[error("not a spanning color forest: {0}")]
    InvalidForest(String),
    #[error("edge {0} belongs to the forest")]
    EdgeInForest(EdgeRef),
    #[error("exhaustive search over {n} vertices exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("coefficient overflow")]
    Overflow,
    #[error("internal mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
