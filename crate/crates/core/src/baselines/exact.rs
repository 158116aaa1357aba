//! Branch-and-bound for the exact optimum.

use super::greedy::{gain, greedy_multicover};
use crate::error::{Error, Result};
use crate::hypergraph::{
    deficits_from_mask, validate_feasible_instance, Cover, Demands, Hypergraph,
};
use crate::lp::LpProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerBound {
    /// ⌈Opt*⌉ of the residual LP at every node, combined with the cheap bound.
    #[default]
    Lp,
    /// max(max_i deficit_i, ⌈Σ deficit / best gain⌉).
    Deficit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub node_budget: u64,
    pub bound: LowerBound,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            node_budget: 5_000_000,
            bound: LowerBound::Lp,
        }
    }
}

/// A certified optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub cover: Cover,
    pub opt: usize,
    pub nodes_explored: u64,
}

struct Search<'a> {
    h: &'a Hypergraph,
    config: ExactConfig,
    nodes: u64,
    best: Vec<bool>,
    best_size: usize,
    included: Vec<bool>,
    decided: Vec<bool>,
    deficits: Vec<u32>,
    /// Undecided incident edges per vertex.
    available: Vec<u32>,
    size: usize,
}

struct OutOfBudget;

impl Search<'_> {
    fn lower_bound(&self, best_gain: usize) -> Result<usize> {
        let total: u64 = self.deficits.iter().map(|&x| x as u64).sum();
        let max = self.deficits.iter().copied().max().unwrap_or(0) as usize;
        let spread = if best_gain == 0 {
            0
        } else {
            (total as usize).div_ceil(best_gain)
        };
        let cheap = max.max(spread);
        if self.config.bound == LowerBound::Deficit {
            return Ok(cheap);
        }
        // residual LP over undecided edges and still-deficient vertices
        let m = self.h.num_edges();
        let mut remap = vec![usize::MAX; m];
        let mut vars = 0;
        for (slot, _) in remap.iter_mut().zip(&self.decided).filter(|(_, &d)| !d) {
            *slot = vars;
            vars += 1;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (v, &def) in self.deficits.iter().enumerate() {
            if def == 0 {
                continue;
            }
            let row: Vec<usize> = self
                .h
                .incident_edges(v)?
                .iter()
                .filter(|&&j| !self.decided[j])
                .map(|&j| remap[j])
                .collect();
            rows.push(row);
            rhs.push(def);
        }
        let sol = LpProblem::new(vars, rows, rhs)?.solve()?;
        let ceil = sol.value.ceil().to_integer();
        let lp: usize = ceil.try_into().map_err(|_| {
            Error::InternalInvariantViolation("residual LP value out of range".into())
        })?;
        Ok(lp.max(cheap))
    }

    fn select(&mut self, j: usize, include: bool) {
        self.decided[j] = true;
        self.included[j] = include;
        for &v in &self.h.edges()[j] {
            self.available[v] -= 1;
        }
        if include {
            self.size += 1;
        }
    }

    fn unselect(&mut self, j: usize) {
        if self.included[j] {
            self.size -= 1;
        }
        for &v in &self.h.edges()[j] {
            self.available[v] += 1;
        }
        self.decided[j] = false;
        self.included[j] = false;
    }

    fn dfs(&mut self) -> Result<std::result::Result<(), OutOfBudget>> {
        self.nodes += 1;
        if self.nodes > self.config.node_budget {
            return Ok(Err(OutOfBudget));
        }
        if self.deficits.iter().all(|&x| x == 0) {
            if self.size < self.best_size {
                self.best_size = self.size;
                self.best = self.included.clone();
            }
            return Ok(Ok(()));
        }
        if self
            .deficits
            .iter()
            .zip(&self.available)
            .any(|(&def, &avail)| def > avail)
        {
            return Ok(Ok(()));
        }
        if self.size + 1 >= self.best_size {
            return Ok(Ok(()));
        }
        let branch = (0..self.h.num_edges())
            .filter(|&j| !self.decided[j])
            .map(|j| (gain(self.h, &self.deficits, j), j))
            .min_by_key(|&(g, j)| (std::cmp::Reverse(g), j));
        let Some((best_gain, j)) = branch.filter(|&(g, _)| g > 0) else {
            return Ok(Ok(()));
        };
        if self.size + self.lower_bound(best_gain)? >= self.best_size {
            return Ok(Ok(()));
        }

        // include first
        let touched: Vec<usize> = self.h.edges()[j]
            .iter()
            .copied()
            .filter(|&v| self.deficits[v] > 0)
            .collect();
        self.select(j, true);
        for &v in &touched {
            self.deficits[v] -= 1;
        }
        let r = self.dfs()?;
        for &v in &touched {
            self.deficits[v] += 1;
        }
        self.unselect(j);
        if r.is_err() {
            return Ok(r);
        }

        self.select(j, false);
        let r = self.dfs()?;
        self.unselect(j);
        Ok(r)
    }
}

/// Minimum multicover by branch-and-bound. Branches on the undecided edge
/// serving the most deficient vertices, include-branch first, starting from
/// the greedy cover as incumbent.
///
/// Returns [`Error::BudgetExceeded`] with the incumbent if the node budget
/// runs out before the search is exhausted.
pub fn exact_min_multicover(
    h: &Hypergraph,
    d: &Demands,
    config: ExactConfig,
) -> Result<ExactResult> {
    if config.node_budget == 0 {
        return Err(Error::InvalidParams("node budget must be positive".into()));
    }
    validate_feasible_instance(h, d)?;
    let m = h.num_edges();
    let incumbent = greedy_multicover(h, d)?;
    let included = vec![false; m];
    let mut search = Search {
        h,
        config,
        nodes: 0,
        best_size: incumbent.len(),
        best: incumbent.to_mask(m),
        deficits: deficits_from_mask(h, d, &included),
        available: (0..h.num_vertices())
            .map(|v| h.incident_edges(v).map(|e| e.len() as u32))
            .collect::<Result<_>>()?,
        included,
        decided: vec![false; m],
        size: 0,
    };
    match search.dfs()? {
        Ok(()) => Ok(ExactResult {
            cover: Cover::from_mask(&search.best),
            opt: search.best_size,
            nodes_explored: search.nodes,
        }),
        Err(OutOfBudget) => Err(Error::BudgetExceeded {
            budget: config.node_budget,
            incumbent: Some(Cover::from_mask(&search.best)),
        }),
    }
}
