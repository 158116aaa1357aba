use crate::error::Result;
use crate::hypergraph::{validate_feasible_instance, Cover, Demands, Hypergraph};
use crate::lp::{LpSolution, Rational};

/// C = {j : x*_j ≥ 1/δ}. Each chosen edge carries at least 1/δ of Opt*, so
/// |C| ≤ δ·Opt*.
pub fn threshold_cover(h: &Hypergraph, d: &Demands, sol: &LpSolution) -> Result<Cover> {
    let delta = validate_feasible_instance(h, d)?.params.delta;
    let t = Rational::new(1.into(), delta.into());
    Ok(Cover::from_mask(
        &sol.x.iter().map(|x| *x >= t).collect::<Vec<_>>(),
    ))
}
