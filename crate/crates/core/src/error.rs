use thiserror::Error;

use crate::graph::{ArcId, VertexId, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("arc {arc} out of range for graph with {m} arcs")]
    ArcOutOfRange { arc: ArcId, m: usize },

    #[error("arc weight {weight} exceeds the magnitude bound 2^40")]
    WeightOutOfRange { weight: Weight },

    #[error("{n} vertices exceeds the supported maximum of 2^20")]
    TooManyVertices { n: usize },

    #[error("graph must have at least one vertex")]
    EmptyVertexSet,

    #[error("arithmetic overflow while computing {context}")]
    Overflow { context: &'static str },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("directed cycle in a graph required to be acyclic (through vertices {witness:?})")]
    Cyclic { witness: Vec<VertexId> },

    #[error(
        "negative arcs remain after {iterations} iterations but no negative cycle exists \
         (bound {bound})"
    )]
    IterationBoundExceeded { iterations: usize, bound: usize },

    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
