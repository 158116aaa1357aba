use crate::error::Result;
use crate::hypergraph::{
    deficits_from_mask, validate_feasible_instance, Cover, Demands, Hypergraph,
};
use crate::lp::Rational;

/// Number of still-deficient vertices an edge would serve.
pub(crate) fn gain(h: &Hypergraph, deficits: &[u32], j: usize) -> usize {
    h.edges()[j].iter().filter(|&&v| deficits[v] > 0).count()
}

/// Repeatedly adds the candidate edge serving the most deficient vertices
/// (lowest index on ties) until no unchosen candidate helps. Returns the
/// number of edges added.
pub(crate) fn greedy_fill(
    h: &Hypergraph,
    deficits: &mut [u32],
    mask: &mut [bool],
    candidates: &[usize],
) -> usize {
    let mut added = 0;
    loop {
        let best = candidates
            .iter()
            .filter(|&&j| !mask[j])
            .map(|&j| (gain(h, deficits, j), j))
            .filter(|&(g, _)| g > 0)
            .min_by_key(|&(g, j)| (std::cmp::Reverse(g), j));
        let Some((_, j)) = best else {
            return added;
        };
        mask[j] = true;
        for &v in &h.edges()[j] {
            deficits[v] = deficits[v].saturating_sub(1);
        }
        added += 1;
    }
}

/// Greedy multicover: each step takes the edge that reduces the total
/// residual demand the most.
pub fn greedy_multicover(h: &Hypergraph, d: &Demands) -> Result<Cover> {
    validate_feasible_instance(h, d)?;
    let mut mask = vec![false; h.num_edges()];
    let mut deficits = deficits_from_mask(h, d, &mask);
    let all: Vec<usize> = (0..h.num_edges()).collect();
    greedy_fill(h, &mut deficits, &mut mask, &all);
    debug_assert!(deficits.iter().all(|&x| x == 0));
    Ok(Cover::from_mask(&mask))
}

/// H(ℓ) = Σ_{i=1..ℓ} 1/i, exactly.
pub fn harmonic(ell: usize) -> Rational {
    (1..=ell).map(|i| Rational::new(1.into(), i.into())).sum()
}
