use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by graph construction and the full-memory oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: VertexId },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("negative edge weight")]
    NegativeWeight,
    #[error("query pair must be two distinct vertices, got {vertex} twice")]
    SamePair { vertex: VertexId },
    #[error("connectivity parameter k must be at least 1")]
    ZeroK,
    #[error("exhaustive enumeration limited to {limit} items, got {actual}")]
    TooLarge { limit: usize, actual: usize },
    #[error("certificate kind mismatch: expected {expected}, got {actual}")]
    KindMismatch {
        expected: &'static str,
        actual: &'static str,
    },
    #[error("weight sum overflows the weight type")]
    WeightOverflow,
}

/// Invariant breaches detected by the engine's runtime accounting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("stored edges {stored} exceed limit {limit} at ingest {ingest}")]
    Storage {
        stored: usize,
        limit: usize,
        ingest: u64,
    },
    #[error("buffer full at ingest {ingest} while recompute still pending")]
    Scheduling { ingest: u64 },
    #[error("recompute used {used} work units, more than its bound {bound}")]
    WorkBound { used: u64, bound: u64 },
    #[error("certificate holds {len} edges, more than its bound {bound}")]
    Sparsity { len: usize, bound: usize },
}

/// Errors raised by the stream engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("group size must be at least 1")]
    ZeroGroupSize,
    #[error("connectivity parameter k must be at least 1")]
    ZeroK,
    #[error("edge {index}: loop at vertex {vertex}")]
    LoopEdge { index: u64, vertex: VertexId },
    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        index: u64,
        vertex: VertexId,
        n: usize,
    },
    #[error("edge {index}: weight required for minimum spanning forest streams")]
    MissingWeight { index: u64 },
    #[error("edge {index}: negative weight")]
    NegativeWeight { index: u64 },
    #[error("stream aborted by an earlier error")]
    Aborted,
    #[error("invariant violated: {0}")]
    Invariant(#[from] InvariantViolation),
}
