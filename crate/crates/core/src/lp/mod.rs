//! The fractional covering relaxation
//!
//! ```text
//! min Σ_j x_j   s.t.   Σ_{j ∈ Γ(v_i)} x_j ≥ b_i,   0 ≤ x_j ≤ 1
//! ```
//!
//! solved exactly over the rationals, together with a dual certificate.

mod lemmas;
mod simplex;

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{validate_feasible_instance, Demands, Hypergraph};

pub use lemmas::{
    check_lemma_b_of_delta, check_lemma_two_over_delta_plus_one, LemmaReport, VertexCheck,
};

pub type Rational = BigRational;

/// Unit-coefficient covering LP with [0,1] boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    num_vars: usize,
    /// Row i lists the variables with coefficient 1.
    rows: Vec<Vec<usize>>,
    rhs: Vec<u32>,
}

impl LpProblem {
    /// Repeated indices within a row count once.
    pub fn new(num_vars: usize, mut rows: Vec<Vec<usize>>, rhs: Vec<u32>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: rhs.len(),
            });
        }
        for row in &mut rows {
            row.sort_unstable();
            row.dedup();
            if let Some(&j) = row.iter().find(|&&j| j >= num_vars) {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    limit: num_vars,
                });
            }
        }
        Ok(Self {
            num_vars,
            rows,
            rhs,
        })
    }

    /// LP(Δ, b) for a validated instance: row i is Γ(v_i), rhs b_i.
    pub fn relaxation(h: &Hypergraph, d: &Demands) -> Result<Self> {
        validate_feasible_instance(h, d)?;
        Ok(Self {
            num_vars: h.num_edges(),
            rows: h.incidence().to_vec(),
            rhs: d.as_slice().to_vec(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[u32] {
        &self.rhs
    }

    pub fn solve(&self) -> Result<LpSolution> {
        simplex::solve(self)
    }

    /// CPLEX-LP text, 1-based names (`x1..xm`, rows `v1..vn`).
    pub fn to_lp_format(&self) -> String {
        let mut out = String::from("\\ set multicover relaxation\nMinimize\n obj:");
        for j in 0..self.num_vars {
            let _ = write!(out, "{} x{}", if j == 0 { "" } else { " +" }, j + 1);
        }
        out.push_str("\nSubject To\n");
        for (i, (row, b)) in self.rows.iter().zip(&self.rhs).enumerate() {
            let _ = write!(out, " v{}:", i + 1);
            for (k, j) in row.iter().enumerate() {
                let _ = write!(out, "{} x{}", if k == 0 { "" } else { " +" }, j + 1);
            }
            let _ = writeln!(out, " >= {b}");
        }
        out.push_str("Bounds\n");
        for j in 0..self.num_vars {
            let _ = writeln!(out, " 0 <= x{} <= 1", j + 1);
        }
        out.push_str("End\n");
        out
    }
}

/// Multipliers of the dual
/// `max bᵀy − 1ᵀw  s.t.  Aᵀy − w + z = 1,  y, w, z ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    /// y, one per covering row.
    pub cover: Vec<Rational>,
    /// w, one per upper bound x_j ≤ 1.
    pub upper: Vec<Rational>,
    /// z, one per lower bound x_j ≥ 0.
    pub lower: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    /// Opt* = Σ_j x*_j.
    pub value: Rational,
    pub dual: DualCertificate,
}

impl LpSolution {
    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }

    /// Checks primal feasibility, dual feasibility and strong duality, all
    /// exactly. Independent of the solver's internal state.
    pub fn verify(&self, p: &LpProblem) -> std::result::Result<(), String> {
        let m = p.num_vars;
        if self.x.len() != m || self.dual.upper.len() != m || self.dual.lower.len() != m {
            return Err("wrong number of variables".into());
        }
        if self.dual.cover.len() != p.rows.len() {
            return Err("wrong number of row multipliers".into());
        }
        for (j, x) in self.x.iter().enumerate() {
            if x.is_negative() || *x > Rational::one() {
                return Err(format!("x{} = {x} outside [0,1]", j + 1));
            }
        }
        for (i, (row, &b)) in p.rows.iter().zip(&p.rhs).enumerate() {
            let lhs: Rational = row.iter().map(|&j| &self.x[j]).sum();
            if lhs < Rational::from_integer(b.into()) {
                return Err(format!("row {} violated: {lhs} < {b}", i + 1));
            }
        }
        let sum: Rational = self.x.iter().sum();
        if sum != self.value {
            return Err(format!("value {} != Σx = {sum}", self.value));
        }
        let all = self
            .dual
            .cover
            .iter()
            .chain(&self.dual.upper)
            .chain(&self.dual.lower);
        if all.into_iter().any(Signed::is_negative) {
            return Err("negative dual multiplier".into());
        }
        let mut column = vec![Rational::zero(); m];
        for (row, y) in p.rows.iter().zip(&self.dual.cover) {
            for &j in row {
                column[j] += y;
            }
        }
        for (j, col) in column.iter().enumerate() {
            let lhs = col - &self.dual.upper[j] + &self.dual.lower[j];
            if !lhs.is_one() {
                return Err(format!("dual constraint {} gives {lhs} != 1", j + 1));
            }
        }
        let dual_value: Rational = p
            .rhs
            .iter()
            .zip(&self.dual.cover)
            .map(|(&b, y)| Rational::from_integer(b.into()) * y)
            .sum::<Rational>()
            - self.dual.upper.iter().sum::<Rational>();
        if dual_value != self.value {
            return Err(format!("dual value {dual_value} != primal {}", self.value));
        }
        Ok(())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().expect("finite rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn solve_checked(p: &LpProblem) -> LpSolution {
        let s = p.solve().unwrap();
        s.verify(p).unwrap();
        s
    }

    #[test]
    fn single_row() {
        let h = Hypergraph::new(1, vec![vec![0]; 3]).unwrap();
        let p = LpProblem::relaxation(&h, &Demands::new(vec![2]).unwrap()).unwrap();
        assert_eq!(p.rows(), &[vec![0, 1, 2]]);
        assert_eq!(p.rhs(), &[2]);
        let s = solve_checked(&p);
        assert_eq!(s.value, q(2, 1));
    }

    #[test]
    fn triangle_with_demand_two() {
        let h = Hypergraph::new(3, vec![vec![0, 2], vec![1, 2], vec![0, 1]]).unwrap();
        let p = LpProblem::relaxation(&h, &Demands::uniform(3, 2).unwrap()).unwrap();
        assert_eq!(p.rows(), &[vec![0, 2], vec![1, 2], vec![0, 1]]);
        let s = solve_checked(&p);
        assert_eq!(s.value, q(3, 1));
        assert_eq!(s.x, vec![q(1, 1); 3]);
    }

    /// Enumerate every basis of the 3×3 system x_a + x_b ≥ 1 over the three
    /// pairs: each vertex of the polytope fixes three of the six inequalities
    /// (three rows, three boxes) as equalities.
    #[test]
    fn triangle_with_demand_one_matches_vertex_enumeration() {
        let pairs = [(0usize, 2usize), (1, 2), (0, 1)];
        let candidates = [q(0, 1), q(1, 2), q(1, 1)];
        let mut best: Option<Rational> = None;
        for a in &candidates {
            for b in &candidates {
                for c in &candidates {
                    let x = [a, b, c];
                    if pairs.iter().all(|&(i, j)| x[i] + x[j] >= q(1, 1)) {
                        let v = a + b + c;
                        if best.as_ref().is_none_or(|bv| v < *bv) {
                            best = Some(v);
                        }
                    }
                }
            }
        }
        assert_eq!(best, Some(q(3, 2)));

        let h = Hypergraph::new(3, vec![vec![0, 2], vec![1, 2], vec![0, 1]]).unwrap();
        let p = LpProblem::relaxation(&h, &Demands::uniform(3, 1).unwrap()).unwrap();
        let s = solve_checked(&p);
        assert_eq!(s.value, q(3, 2));
        assert_eq!(s.x, vec![q(1, 2); 3]);
    }

    #[test]
    fn infeasible_rows() {
        let p = LpProblem::new(2, vec![vec![0, 1]], vec![3]).unwrap();
        assert_eq!(p.solve(), Err(Error::LpInfeasible));
        let h = Hypergraph::new(1, vec![vec![0]]).unwrap();
        assert!(matches!(
            LpProblem::relaxation(&h, &Demands::new(vec![2]).unwrap()),
            Err(Error::InfeasibleInstance { .. })
        ));
    }

    #[test]
    fn redundant_rows_and_empty_problem() {
        let p = LpProblem::new(2, vec![vec![0, 1], vec![0, 1], vec![1]], vec![1, 1, 1]).unwrap();
        let s = solve_checked(&p);
        assert_eq!(s.value, q(1, 1));
        let p = LpProblem::new(3, vec![], vec![]).unwrap();
        let s = solve_checked(&p);
        assert!(s.value.is_zero());
    }

    #[test]
    fn solve_is_deterministic() {
        let h = Hypergraph::new(
            5,
            vec![
                vec![0, 1, 2],
                vec![1, 3],
                vec![2, 3, 4],
                vec![0, 4],
                vec![0, 1, 3, 4],
                vec![2, 4],
            ],
        )
        .unwrap();
        let p = LpProblem::relaxation(&h, &Demands::uniform(5, 2).unwrap()).unwrap();
        let a = solve_checked(&p);
        let b = solve_checked(&p);
        assert_eq!(a, b);
    }

    #[test]
    fn lp_format_dump() {
        let p = LpProblem::new(3, vec![vec![0, 2], vec![1]], vec![2, 1]).unwrap();
        assert_eq!(
            p.to_lp_format(),
            "\\ set multicover relaxation\nMinimize\n obj: x1 + x2 + x3\nSubject To\n \
             v1: x1 + x3 >= 2\n v2: x2 >= 1\nBounds\n 0 <= x1 <= 1\n 0 <= x2 <= 1\n \
             0 <= x3 <= 1\nEnd\n"
        );
    }
}
