use thiserror::Error;

use crate::hypergraph::Cover;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },

    #[error("hypergraph has no edges")]
    EmptyEdgeList,

    #[error("hypergraph has no vertices")]
    NoVertices,

    #[error("vertex {vertex} appears twice in edge {edge}")]
    DuplicateVertex { edge: usize, vertex: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("demand of vertex {vertex} must be at least 1")]
    InvalidDemand { vertex: usize },

    /// Some vertex lies in fewer edges than it must be covered by.
    #[error("instance infeasible: vertex {vertex} has degree {degree} < demand {demand}")]
    InfeasibleInstance {
        vertex: usize,
        degree: usize,
        demand: u32,
    },

    #[error("linear program is infeasible")]
    LpInfeasible,

    #[error("epsilon {epsilon} outside admissible interval [{low}, ({low})^(1/{k})] for delta = {delta}")]
    EpsilonOutOfRange {
        epsilon: String,
        low: String,
        k: u32,
        delta: u32,
    },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("repair cannot satisfy vertex {vertex}")]
    RepairImpossible { vertex: usize },

    /// Branch-and-bound ran out of nodes. `incumbent` is the best cover found
    /// so far; it is feasible but not certified optimal.
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded {
        budget: u64,
        incumbent: Option<Cover>,
    },

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
