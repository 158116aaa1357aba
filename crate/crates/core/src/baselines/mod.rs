//! Reference algorithms: greedy, LP threshold and an exact oracle.

mod exact;
mod greedy;
mod threshold;

pub use exact::{exact_min_multicover, ExactConfig, ExactResult, LowerBound};
pub use greedy::{greedy_multicover, harmonic};
pub use threshold::threshold_cover;

pub(crate) use greedy::greedy_fill;
