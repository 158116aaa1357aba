//! Structural properties of any feasible LP point, checked vertex by vertex.
//!
//! For a vertex with 2 ≤ b_i ≤ d(v_i) − 1 and δ = Δ − b + 1:
//! * at least b_i incident values satisfy x_j ≥ 1/δ;
//! * at least b_i − 1 incident values satisfy x_j ≥ 2/(δ+1), and a further
//!   distinct incident value satisfies x_j ≥ 1/δ.

use std::cmp::Reverse;

use super::{LpSolution, Rational};
use crate::error::Result;
use crate::hypergraph::{validate_feasible_instance, Demands, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexCheck {
    Holds,
    /// Outside 2 ≤ b_i ≤ d(v_i) − 1; nothing to check.
    Skipped,
    Violated {
        qualifying: usize,
        required: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub delta: usize,
    pub vertices: Vec<VertexCheck>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.counterexample().is_none()
    }

    pub fn counterexample(&self) -> Option<usize> {
        self.vertices
            .iter()
            .position(|c| matches!(c, VertexCheck::Violated { .. }))
    }

    pub fn skipped(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter_map(|(v, c)| (*c == VertexCheck::Skipped).then_some(v))
    }

    pub fn checked(&self) -> usize {
        self.vertices
            .iter()
            .filter(|c| **c != VertexCheck::Skipped)
            .count()
    }
}

/// Incident values of every vertex, sorted descending, or `None` for vertices
/// outside the lemma regime.
fn regime_values(
    sol: &LpSolution,
    h: &Hypergraph,
    d: &Demands,
) -> Result<(usize, Vec<Option<Vec<Rational>>>)> {
    let report = validate_feasible_instance(h, d)?;
    let mut out = Vec::with_capacity(h.num_vertices());
    for v in 0..h.num_vertices() {
        let inc = h.incident_edges(v)?;
        let b = d.get(v) as usize;
        if b < 2 || b + 1 > inc.len() {
            out.push(None);
            continue;
        }
        let mut vals: Vec<Rational> = inc.iter().map(|&j| sol.x[j].clone()).collect();
        vals.sort_by_key(|x| Reverse(x.clone()));
        out.push(Some(vals));
    }
    Ok((report.params.delta, out))
}

pub fn check_lemma_b_of_delta(
    sol: &LpSolution,
    h: &Hypergraph,
    d: &Demands,
) -> Result<LemmaReport> {
    let (delta, values) = regime_values(sol, h, d)?;
    let threshold = Rational::new(1.into(), delta.into());
    let vertices = values
        .into_iter()
        .enumerate()
        .map(|(v, vals)| match vals {
            None => VertexCheck::Skipped,
            Some(vals) => {
                let required = d.get(v) as usize;
                let qualifying = vals.iter().filter(|x| **x >= threshold).count();
                if qualifying >= required {
                    VertexCheck::Holds
                } else {
                    VertexCheck::Violated {
                        qualifying,
                        required,
                    }
                }
            }
        })
        .collect();
    Ok(LemmaReport { delta, vertices })
}

pub fn check_lemma_two_over_delta_plus_one(
    sol: &LpSolution,
    h: &Hypergraph,
    d: &Demands,
) -> Result<LemmaReport> {
    let (delta, values) = regime_values(sol, h, d)?;
    let high = Rational::new(2.into(), (delta + 1).into());
    let low = Rational::new(1.into(), delta.into());
    let vertices = values
        .into_iter()
        .enumerate()
        .map(|(v, vals)| match vals {
            None => VertexCheck::Skipped,
            Some(vals) => {
                let b = d.get(v) as usize;
                // sorted descending: the b−1 largest must clear 2/(δ+1) and
                // the b-th largest (a distinct edge) must clear 1/δ
                let qualifying = vals.iter().take_while(|x| **x >= high).count();
                if qualifying >= b - 1 && vals[b - 1] >= low {
                    VertexCheck::Holds
                } else {
                    VertexCheck::Violated {
                        qualifying: qualifying.min(b - 1) + usize::from(vals[b - 1] >= low),
                        required: b,
                    }
                }
            }
        })
        .collect();
    Ok(LemmaReport { delta, vertices })
}
