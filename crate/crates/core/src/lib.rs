//! Set multicover on hypergraphs.
//!
//! Given a hypergraph and a demand `b_v` per vertex, find the fewest edges
//! such that every vertex lies in at least `b_v` of them. The crate provides
//! an exact rational LP relaxation, a hybrid threshold / repeated randomized
//! rounding approximation, greedy, threshold and branch-and-bound baselines,
//! and instance families (random, integrality-gap, hardness reduction) with a
//! plain text format.

pub mod baselines;
pub mod error;
pub mod hybrid;
pub mod hypergraph;
pub mod instance;
pub mod lp;

pub use error::{Error, Result};
pub use hybrid::{run_repeated, AlgorithmParams, Branch, RunResult};
pub use hypergraph::{
    coverage_deficit, is_multicover, validate_feasible_instance, Cover, Demands, DerivedParams,
    Hypergraph, InstanceReport,
};
pub use lp::{LpProblem, LpSolution, Rational};
