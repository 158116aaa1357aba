//! Instance families and the text format.

mod format;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use format::{parse_instance, serialize_instance};

use crate::error::{Error, Result};
use crate::hypergraph::{Demands, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub m: usize,
    pub max_edge_size: usize,
    pub b_min: u32,
    pub b_max: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Random(RandomSpec),
    /// Odd-dot-product family over F₂ᵏ \ {0}.
    Gap {
        k: u32,
        b: u32,
    },
    /// Cover-to-multicover transform of a uniform base hypergraph, read in
    /// the vertex-cover view.
    Reduction {
        base: Hypergraph,
        b: u32,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<(Hypergraph, Demands)> {
        match self {
            GeneratorSpec::Random(spec) => gen_random(spec),
            GeneratorSpec::Gap { k, b } => gen_gap_family(*k, *b),
            GeneratorSpec::Reduction { base, b } => reduction_instance(base, *b),
        }
    }
}

const MAX_ATTEMPTS: u64 = 32;

/// Random instance in the regime b_min + 1 ≤ d(v) for every vertex.
///
/// Edges are uniform random vertex subsets with sizes uniform in
/// [min(2, ℓ_max), ℓ_max]. Vertices short of b_min + 1 incidences are added
/// to non-full edges, or swapped in for a vertex with spare degree. Each
/// demand is then uniform in [b_min, min(b_max, d(v) − 1)].
pub fn gen_random(spec: &RandomSpec) -> Result<(Hypergraph, Demands)> {
    let RandomSpec {
        n,
        m,
        max_edge_size: ell,
        b_min,
        b_max,
        seed,
    } = *spec;
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams("n and m must be positive".into()));
    }
    if ell == 0 || ell > n {
        return Err(Error::InvalidParams(format!(
            "max edge size must lie in 1..={n}, got {ell}"
        )));
    }
    if b_min == 0 || b_min > b_max {
        return Err(Error::InvalidParams(format!(
            "demand range [{b_min}, {b_max}] is invalid"
        )));
    }
    let need = b_min as usize + 1;
    if m < need || m * ell < n * need {
        return Err(Error::GenerationFailed(format!(
            "{m} edges of size <= {ell} cannot give all {n} vertices degree >= {need}"
        )));
    }
    let min_size = ell.min(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut edges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(min_size..=ell);
                index::sample(&mut rng, n, size).into_vec()
            })
            .collect();
        if augment(&mut edges, n, ell, need, &mut rng) {
            let h = Hypergraph::new(n, edges)?;
            let b = (0..n)
                .map(|v| {
                    let top = b_max.min(h.degree(v).expect("vertex in range") as u32 - 1);
                    rng.gen_range(b_min..=top)
                })
                .collect();
            return Ok((h, Demands::new(b)?));
        }
    }
    Err(Error::GenerationFailed(format!(
        "no instance with min degree {need} after {MAX_ATTEMPTS} attempts (n={n}, m={m}, l={ell})"
    )))
}

/// Raises every vertex to degree ≥ `need`. Returns false when stuck.
fn augment(
    edges: &mut [Vec<usize>],
    n: usize,
    ell: usize,
    need: usize,
    rng: &mut ChaCha8Rng,
) -> bool {
    let mut degree = vec![0usize; n];
    for e in edges.iter() {
        for &v in e {
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    for v in 0..n {
        while degree[v] < need {
            order.shuffle(rng);
            let grow = order
                .iter()
                .copied()
                .find(|&j| edges[j].len() < ell && !edges[j].contains(&v));
            if let Some(j) = grow {
                edges[j].push(v);
                degree[v] += 1;
                continue;
            }
            let swap = order.iter().copied().find_map(|j| {
                if edges[j].contains(&v) {
                    return None;
                }
                edges[j]
                    .iter()
                    .position(|&u| degree[u] > need)
                    .map(|pos| (j, pos))
            });
            let Some((j, pos)) = swap else {
                return false;
            };
            degree[edges[j][pos]] -= 1;
            edges[j][pos] = v;
            degree[v] += 1;
        }
    }
    true
}

/// Vertices are the nonzero vectors of F₂ᵏ, vertex i ↔ bit pattern i + 1;
/// edge j collects the vectors with odd dot product against pattern j + 1.
/// Every edge and every vertex degree equals 2^(k−1).
pub fn gen_gap_family(k: u32, b: u32) -> Result<(Hypergraph, Demands)> {
    if !(2..=20).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "k must lie in 2..=20, got {k}"
        )));
    }
    if b == 0 {
        return Err(Error::InvalidParams("b must be at least 1".into()));
    }
    let n = (1usize << k) - 1;
    let edges = (1..=n).map(|v| {
        (1..=n)
            .filter(move |&u| (u & v).count_ones() % 2 == 1)
            .map(|u| u - 1)
    });
    let h = Hypergraph::new(n, edges)?;
    Ok((h, Demands::uniform(n, b)?))
}

/// Adds b − 1 new vertices (indices n..n+b−1) to every edge.
pub fn reduce_add_universal_vertices(h: &Hypergraph, b: u32) -> Result<Hypergraph> {
    if b < 2 {
        return Err(Error::InvalidParams(format!(
            "b must be at least 2, got {b}"
        )));
    }
    let n = h.num_vertices();
    let extra = b as usize - 1;
    Hypergraph::new(
        n + extra,
        h.edges()
            .iter()
            .map(|e| e.iter().copied().chain(n..n + extra).collect::<Vec<_>>()),
    )
}

/// b-vertex cover of `h` (choose vertices so each edge holds ≥ b of them)
/// as a multicover instance on the dual hypergraph.
pub fn vertex_cover_instance(h: &Hypergraph, b: u32) -> Result<(Hypergraph, Demands)> {
    let dual = h.dual().map_err(|_| {
        Error::InvalidParams("every vertex must lie in some edge to take the dual".into())
    })?;
    let demands = Demands::uniform(dual.num_vertices(), b)?;
    Ok((dual, demands))
}

/// Vertex cover on a Δ-uniform `base` becomes b-vertex cover on the
/// (Δ+b−1)-uniform augmented hypergraph, returned in multicover form.
pub fn reduction_instance(base: &Hypergraph, b: u32) -> Result<(Hypergraph, Demands)> {
    if !base.is_uniform() {
        return Err(Error::InvalidParams(
            "reduction base must be uniform".into(),
        ));
    }
    vertex_cover_instance(&reduce_add_universal_vertices(base, b)?, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::validate_feasible_instance;
    use crate::lp::{LpProblem, Rational};
    use proptest::prelude::*;

    #[test]
    fn random_is_reproducible_and_in_regime() {
        let spec = RandomSpec {
            n: 10,
            m: 20,
            max_edge_size: 4,
            b_min: 2,
            b_max: 3,
            seed: 7,
        };
        let a = gen_random(&spec).unwrap();
        let b = gen_random(&spec).unwrap();
        assert_eq!(a, b);
        let (h, d) = a;
        assert!(validate_feasible_instance(&h, &d).is_ok());
        assert!(h.max_edge_size() <= 4);
        for v in 0..h.num_vertices() {
            let deg = h.degree(v).unwrap() as u32;
            assert!((2..=3).contains(&d.get(v)));
            assert!(d.get(v) < deg);
        }
        let other = gen_random(&RandomSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(other.0, h);
    }

    #[test]
    fn random_rejects_impossible_specs() {
        let spec = RandomSpec {
            n: 10,
            m: 2,
            max_edge_size: 4,
            b_min: 2,
            b_max: 3,
            seed: 7,
        };
        assert!(matches!(gen_random(&spec), Err(Error::GenerationFailed(_))));
        let spec = RandomSpec {
            max_edge_size: 11,
            m: 20,
            ..spec
        };
        assert!(matches!(gen_random(&spec), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn gap_k2_matches_hand_enumeration() {
        // dot products over F₂²: vertex 1 ↔ 01, 2 ↔ 10, 3 ↔ 11
        let vecs = [(0u8, 1u8), (1, 0), (1, 1)];
        let expected: Vec<Vec<usize>> = vecs
            .iter()
            .map(|v| {
                (0..3)
                    .filter(|&u| (v.0 * vecs[u].0 + v.1 * vecs[u].1) % 2 == 1)
                    .collect()
            })
            .collect();
        let (h, d) = gen_gap_family(2, 1).unwrap();
        assert_eq!(h.edges(), expected.as_slice());
        assert_eq!(h.edges(), &[vec![0, 2], vec![1, 2], vec![0, 1]]);
        assert_eq!(d.as_slice(), &[1, 1, 1]);
        let p = LpProblem::relaxation(&h, &d).unwrap();
        assert!(p.rows().iter().all(|r| r.len() == 2));
    }

    #[test]
    fn gap_structure() {
        for k in 2..=6u32 {
            let (h, _) = gen_gap_family(k, 1).unwrap();
            let half = 1usize << (k - 1);
            assert_eq!(h.num_vertices(), (1 << k) - 1);
            assert_eq!(h.num_edges(), (1 << k) - 1);
            assert!(h.edges().iter().all(|e| e.len() == half));
            assert!((0..h.num_vertices()).all(|v| h.degree(v).unwrap() == half));
            // self-dual: the dot product is symmetric
            assert_eq!(h.dual().unwrap(), h);
        }
    }

    #[test]
    fn gap_uniform_point_is_feasible() {
        for k in 2..=5u32 {
            for b in 1..=3u32 {
                let (h, _) = gen_gap_family(k, b).unwrap();
                let m = h.num_edges() as i64;
                let x = Rational::new((2 * b as i64).into(), m.into());
                for v in 0..h.num_vertices() {
                    let lhs = &x * Rational::from_integer(h.degree(v).unwrap().into());
                    assert!(lhs >= Rational::from_integer(b.into()));
                }
            }
        }
    }

    #[test]
    fn universal_vertices() {
        let (h, _) = gen_gap_family(2, 1).unwrap();
        let r = reduce_add_universal_vertices(&h, 2).unwrap();
        assert_eq!(r.num_vertices(), 4);
        assert_eq!(r.edges(), &[vec![0, 2, 3], vec![1, 2, 3], vec![0, 1, 3]]);
        let base = Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 3, 4]]).unwrap();
        for b in 2..=4u32 {
            let r = reduce_add_universal_vertices(&base, b).unwrap();
            assert!(r.is_uniform());
            assert_eq!(r.max_edge_size(), 3 + b as usize - 1);
            for v in 5..5 + b as usize - 1 {
                assert_eq!(r.degree(v).unwrap(), 3);
            }
        }
        assert!(reduce_add_universal_vertices(&base, 1).is_err());
        let nonuniform = Hypergraph::new(3, vec![vec![0, 1, 2], vec![1, 2]]).unwrap();
        assert!(reduction_instance(&nonuniform, 2).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(seed in any::<u64>(), n in 3usize..12, extra in 0usize..20, b in 1u32..3) {
            let spec = RandomSpec { n, m: n + extra + 3, max_edge_size: 3.min(n), b_min: b, b_max: b + 1, seed };
            if let Ok((h, d)) = gen_random(&spec) {
                let text = serialize_instance(&h, &d);
                let parsed = parse_instance(&text).unwrap();
                prop_assert_eq!(&parsed, &(h, d));
                prop_assert_eq!(serialize_instance(&parsed.0, &parsed.1), text);
            }
        }
    }
}
