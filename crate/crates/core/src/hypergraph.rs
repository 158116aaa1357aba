//! Hypergraphs, coverage demands and multicover feasibility.
//!
//! All indices in this API are 0-based. The text format and the CLI reports
//! shift them to 1-based.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite hypergraph with `n` vertices and an ordered list of edges.
///
/// Edges are stored sorted and duplicate-free. Identical edges at different
/// positions are allowed and treated as distinct sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge. Rejects empty edges, repeated
    /// vertices inside an edge and out-of-range vertex indices.
    pub fn new<E, I>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut stored = Vec::new();
        for (j, edge) in edges.into_iter().enumerate() {
            let mut e: Vec<usize> = edge.into_iter().collect();
            if e.is_empty() {
                return Err(Error::EmptyEdge { edge: j });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: v, limit: n });
            }
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex {
                    edge: j,
                    vertex: w[0],
                });
            }
            stored.push(e);
        }
        if stored.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let mut incidence = vec![Vec::new(); n];
        for (j, e) in stored.iter().enumerate() {
            for &v in e {
                incidence[v].push(j);
            }
        }
        Ok(Self {
            n,
            edges: stored,
            incidence,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> Result<&[usize]> {
        self.edges
            .get(j)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: j,
                limit: self.edges.len(),
            })
    }

    /// Γ(v): indices of the edges containing `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> Result<&[usize]> {
        self.incidence
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: v,
                limit: self.n,
            })
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.incident_edges(v).map(<[usize]>::len)
    }

    /// Δ, the largest vertex degree.
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// ℓ, the largest edge size.
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform(&self) -> bool {
        let first = self.edges[0].len();
        self.edges.iter().all(|e| e.len() == first)
    }

    pub fn is_regular(&self) -> bool {
        let first = self.incidence[0].len();
        self.incidence.iter().all(|inc| inc.len() == first)
    }

    /// Swaps the roles of vertices and edges: dual vertex `j` is original edge
    /// `j`, dual edge `i` is Γ(v_i).
    ///
    /// Fails with [`Error::EmptyEdge`] if some vertex is isolated, since its
    /// dual edge would be empty.
    pub fn dual(&self) -> Result<Hypergraph> {
        Hypergraph::new(self.edges.len(), self.incidence.iter().cloned())
    }

    /// Adjacency incidence rows, one per vertex. Shared by the LP builder.
    pub(crate) fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }
}

/// Per-vertex coverage requirements b_i ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demands(Vec<u32>);

impl Demands {
    pub fn new(b: Vec<u32>) -> Result<Self> {
        if let Some(v) = b.iter().position(|&x| x == 0) {
            return Err(Error::InvalidDemand { vertex: v });
        }
        Ok(Self(b))
    }

    pub fn uniform(n: usize, b: u32) -> Result<Self> {
        Self::new(vec![b; n])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.0[v]
    }

    /// b = min_i b_i.
    pub fn min(&self) -> u32 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub(crate) fn check_dims(&self, h: &Hypergraph) -> Result<()> {
        if self.0.len() != h.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: h.num_vertices(),
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// A set of chosen edge indices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Cover(Vec<usize>);

impl Cover {
    pub fn new(m: usize, chosen: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = chosen.into_iter().collect();
        if let Some(&j) = set.iter().next_back().filter(|&&j| j >= m) {
            return Err(Error::IndexOutOfRange { index: j, limit: m });
        }
        Ok(Self(set.into_iter().collect()))
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter_map(|(j, &c)| c.then_some(j))
                .collect(),
        )
    }

    pub fn all(m: usize) -> Self {
        Self((0..m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for &j in &self.0 {
            mask[j] = true;
        }
        mask
    }

    /// 1-based indices for reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|j| j + 1).collect()
    }
}

fn check_cover(h: &Hypergraph, c: &Cover) -> Result<()> {
    match c.as_slice().last() {
        Some(&j) if j >= h.num_edges() => Err(Error::IndexOutOfRange {
            index: j,
            limit: h.num_edges(),
        }),
        _ => Ok(()),
    }
}

/// max(0, b_i − |Γ(v_i) ∩ C|) for every vertex.
pub fn coverage_deficit(h: &Hypergraph, d: &Demands, c: &Cover) -> Result<Vec<u32>> {
    d.check_dims(h)?;
    check_cover(h, c)?;
    let mask = c.to_mask(h.num_edges());
    Ok(deficits_from_mask(h, d, &mask))
}

pub(crate) fn deficits_from_mask(h: &Hypergraph, d: &Demands, mask: &[bool]) -> Vec<u32> {
    h.incidence()
        .iter()
        .zip(d.as_slice())
        .map(|(inc, &b)| {
            let got = inc.iter().filter(|&&j| mask[j]).count() as u32;
            b.saturating_sub(got)
        })
        .collect()
}

pub fn is_multicover(h: &Hypergraph, d: &Demands, c: &Cover) -> Result<bool> {
    Ok(coverage_deficit(h, d, c)?.iter().all(|&x| x == 0))
}

/// Δ, ℓ, b and δ = Δ − b + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedParams {
    pub max_degree: usize,
    pub max_edge_size: usize,
    pub b_min: u32,
    pub delta: usize,
}

/// Outcome of [`validate_feasible_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceReport {
    pub params: DerivedParams,
    /// Vertices with d(v) = b_v.
    pub tight_vertices: Vec<usize>,
    /// Every edge incident to a tight vertex; any multicover contains them.
    pub forced_edges: Vec<usize>,
    /// Vertices outside 2 ≤ b_v ≤ d(v) − 1, where the threshold lemmas do
    /// not apply.
    pub outside_lemma_regime: Vec<usize>,
}

/// Checks that the full edge set is a multicover and computes the derived
/// parameters.
pub fn validate_feasible_instance(h: &Hypergraph, d: &Demands) -> Result<InstanceReport> {
    d.check_dims(h)?;
    let mut tight = Vec::new();
    let mut outside = Vec::new();
    let mut forced = BTreeSet::new();
    for v in 0..h.num_vertices() {
        let deg = h.degree(v)?;
        let b = d.get(v);
        if (deg as u64) < b as u64 {
            return Err(Error::InfeasibleInstance {
                vertex: v,
                degree: deg,
                demand: b,
            });
        }
        if deg == b as usize {
            tight.push(v);
            forced.extend(h.incident_edges(v)?.iter().copied());
        }
        if b < 2 || deg == b as usize {
            outside.push(v);
        }
    }
    let max_degree = h.max_degree();
    let b_min = d.min();
    Ok(InstanceReport {
        params: DerivedParams {
            max_degree,
            max_edge_size: h.max_edge_size(),
            b_min,
            delta: max_degree + 1 - b_min as usize,
        },
        tight_vertices: tight,
        forced_edges: forced.into_iter().collect(),
        outside_lemma_regime: outside,
    })
}
