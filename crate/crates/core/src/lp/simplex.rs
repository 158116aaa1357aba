//! Bounded-variable primal simplex over exact rationals.
//!
//! Columns are laid out as `[x_0..x_m | s_0..s_n]`: structural variables
//! boxed in [0,1] and one surplus per covering row. A covering LP with unit
//! coefficients is feasible exactly when x = 1 is, so the surplus basis with
//! every x at its upper bound is a feasible start and no phase one is needed.
//! Pricing is Dantzig's rule with a switch to Bland's rule during degenerate
//! stalls; every tie goes to the smallest index, so the returned vertex is a
//! pure function of the problem.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{DualCertificate, LpProblem, LpSolution};
use crate::error::{Error, Result};

type Q = BigRational;

const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau {
    /// B⁻¹ [A | −I].
    rows: Vec<Vec<Q>>,
    /// Current value of the basic variable of each row.
    beta: Vec<Q>,
    basis: Vec<usize>,
    status: Vec<Status>,
    /// `None` is +∞. Every lower bound is 0.
    upper: Vec<Option<Q>>,
    reduced: Vec<Q>,
    num_rows: usize,
}

enum Step {
    Optimal,
    Moved { degenerate: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Dantzig,
    Bland,
}

/// Consecutive degenerate pivots after which Bland's rule takes over.
const DEGENERATE_SWITCH: usize = 32;

impl Tableau {
    /// Surplus basis with every structural variable at its upper bound.
    fn at_all_ones(p: &LpProblem) -> Self {
        let m = p.num_vars;
        let n = p.rows.len();
        let cols = m + n;
        let mut rows = vec![vec![Q::zero(); cols]; n];
        let mut beta = Vec::with_capacity(n);
        for (i, support) in p.rows.iter().enumerate() {
            // s_i = Σ x − b_i, so the row of B⁻¹[A | −I] is [−A_i | e_i]
            for &j in support {
                rows[i][j] = -Q::one();
            }
            rows[i][m + i] = Q::one();
            beta.push(Q::from_integer(
                (support.len() as i64 - p.rhs[i] as i64).into(),
            ));
        }
        let mut status = vec![Status::AtUpper; m];
        status.extend(std::iter::repeat_n(Status::Basic, n));
        let mut upper = vec![Some(Q::one()); m];
        upper.extend(std::iter::repeat_n(None, n));
        Self {
            rows,
            beta,
            basis: (m..m + n).collect(),
            status,
            upper,
            reduced: vec![Q::zero(); cols],
            num_rows: n,
        }
    }

    fn num_cols(&self) -> usize {
        self.status.len()
    }

    fn nonbasic_value(&self, j: usize) -> Q {
        match self.status[j] {
            Status::AtUpper => self.upper[j].clone().expect("finite upper bound"),
            _ => Q::zero(),
        }
    }

    fn set_costs(&mut self, cost: &[Q]) {
        let mut d = cost.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (dj, t) in d.iter_mut().zip(&self.rows[r]) {
                if !t.is_zero() {
                    *dj -= &cost[b] * t;
                }
            }
        }
        self.reduced = d;
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        if !piv.is_one() {
            for t in self.rows[p].iter_mut() {
                if !t.is_zero() {
                    *t /= &piv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[p]);
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == p || row.is_empty() || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (t, pr) in row.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *t -= &f * pr;
                }
            }
        }
        if !self.reduced[q].is_zero() {
            let f = self.reduced[q].clone();
            for (t, pr) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *t -= &f * pr;
                }
            }
        }
        self.rows[p] = pivot_row;
        let leaving = self.basis[p];
        self.basis[p] = q;
        self.status[q] = Status::Basic;
        // callers overwrite this when the leaving variable exits at its upper bound
        self.status[leaving] = Status::AtLower;
    }

    /// Eligible nonbasic columns: improving reduced cost and room to move.
    fn eligible(&self, j: usize) -> bool {
        let d = &self.reduced[j];
        match self.status[j] {
            Status::Basic => false,
            Status::AtLower => d.is_negative() && !matches!(&self.upper[j], Some(u) if u.is_zero()),
            Status::AtUpper => d.is_positive(),
        }
    }

    fn entering(&self, rule: Rule) -> Option<usize> {
        let mut eligible = (0..self.num_cols()).filter(|&j| self.eligible(j));
        match rule {
            Rule::Bland => eligible.next(),
            // largest |d_j|, smallest index on ties
            Rule::Dantzig => eligible.fold(None, |best: Option<usize>, j| match best {
                Some(b) if self.reduced[b].abs() >= self.reduced[j].abs() => Some(b),
                _ => Some(j),
            }),
        }
    }

    fn step(&mut self, rule: Rule) -> Result<Step> {
        let Some(q) = self.entering(rule) else {
            return Ok(Step::Optimal);
        };
        let increasing = self.status[q] == Status::AtLower;

        // (step length, variable index, leaving row or None for a bound flip,
        // leaving variable exits at its upper bound)
        let mut best: Option<(Q, usize, Option<usize>, bool)> = None;
        let mut consider = |theta: Q, var: usize, row: Option<usize>, at_upper: bool| {
            let better = match &best {
                None => true,
                Some((t, v, _, _)) => theta < *t || (theta == *t && var < *v),
            };
            if better {
                best = Some((theta, var, row, at_upper));
            }
        };
        if let Some(u) = &self.upper[q] {
            consider(u.clone(), q, None, false);
        }
        for r in 0..self.num_rows {
            let t = &self.rows[r][q];
            if t.is_zero() {
                continue;
            }
            let rate = if increasing { t.clone() } else { -t.clone() };
            let var = self.basis[r];
            if rate.is_positive() {
                consider(&self.beta[r] / &rate, var, Some(r), false);
            } else if let Some(u) = &self.upper[var] {
                consider((u - &self.beta[r]) / -rate, var, Some(r), true);
            }
        }
        let Some((theta, _, row, leaves_at_upper)) = best else {
            return Err(Error::InternalInvariantViolation(
                "covering LP reported unbounded".into(),
            ));
        };

        let degenerate = theta.is_zero();
        if !degenerate {
            for r in 0..self.num_rows {
                let t = &self.rows[r][q];
                if t.is_zero() {
                    continue;
                }
                let delta = &theta * t;
                if increasing {
                    self.beta[r] -= delta;
                } else {
                    self.beta[r] += delta;
                }
            }
        }
        match row {
            None => {
                self.status[q] = if increasing {
                    Status::AtUpper
                } else {
                    Status::AtLower
                };
            }
            Some(p) => {
                let entering_value = if increasing {
                    theta
                } else {
                    self.nonbasic_value(q) - theta
                };
                let leaving = self.basis[p];
                self.pivot(p, q);
                self.beta[p] = entering_value;
                if leaves_at_upper {
                    self.status[leaving] = Status::AtUpper;
                }
            }
        }
        Ok(Step::Moved { degenerate })
    }

    /// Dantzig pricing while the objective strictly improves; Bland's rule
    /// during long degenerate runs. Cycling needs an unbroken degenerate
    /// run, and Bland's rule cannot cycle, so this terminates.
    fn optimize(&mut self) -> Result<()> {
        let mut stalled = 0;
        for _ in 0..MAX_PIVOTS {
            let rule = if stalled >= DEGENERATE_SWITCH {
                Rule::Bland
            } else {
                Rule::Dantzig
            };
            match self.step(rule)? {
                Step::Optimal => return Ok(()),
                Step::Moved { degenerate: true } => stalled += 1,
                Step::Moved { degenerate: false } => stalled = 0,
            }
        }
        Err(Error::InternalInvariantViolation(format!(
            "simplex exceeded {MAX_PIVOTS} pivots"
        )))
    }

    fn value_of(&self, j: usize) -> Q {
        match self.status[j] {
            Status::Basic => {
                let r = self.basis.iter().position(|&b| b == j).expect("basic var");
                self.beta[r].clone()
            }
            _ => self.nonbasic_value(j),
        }
    }
}

pub(super) fn solve(p: &LpProblem) -> Result<LpSolution> {
    let m = p.num_vars;
    let n = p.rows.len();
    if p.rows
        .iter()
        .zip(&p.rhs)
        .any(|(r, &b)| r.len() < b as usize)
    {
        return Err(Error::LpInfeasible);
    }
    let mut tab = Tableau::at_all_ones(p);
    let mut cost = vec![Q::zero(); m + n];
    for c in cost.iter_mut().take(m) {
        *c = Q::one();
    }
    tab.set_costs(&cost);
    tab.optimize()?;

    let x: Vec<Q> = (0..m).map(|j| tab.value_of(j)).collect();
    let value: Q = x.iter().sum();
    let cover_duals: Vec<Q> = (0..n).map(|i| tab.reduced[m + i].clone()).collect();
    let mut upper_duals = vec![Q::zero(); m];
    let mut lower_duals = vec![Q::zero(); m];
    for j in 0..m {
        let d = &tab.reduced[j];
        if d.is_negative() {
            upper_duals[j] = -d.clone();
        } else if d.is_positive() {
            lower_duals[j] = d.clone();
        }
    }
    Ok(LpSolution {
        x,
        value,
        dual: DualCertificate {
            cover: cover_duals,
            upper: upper_duals,
            lower: lower_duals,
        },
    })
}
