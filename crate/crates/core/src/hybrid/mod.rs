//! Hybrid deterministic threshold / repeated multi-randomized rounding.
//!
//! Pipeline for one instance:
//! 1. solve the LP relaxation exactly and split the edges by x*_j into
//!    C₁ (x ≥ 1/λ), C₂ (1/λ > x ≥ 1/δ), C₃ (0 < x < 1/δ) and the zero set;
//! 2. if |C₁| ≥ α·Opt*, return C₁ ∪ C₂;
//! 3. otherwise run `t` independent trials. Each takes C₁, flips `k` coins of
//!    bias λ₀x*_j for every C₂ edge and one coin of bias (1−ε^k)δx*_j for every
//!    C₃ edge, then repairs the cover greedily. The smallest cover wins.

mod constants;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use constants::{derive_constants, exp_bounds, AlgorithmParams, DerivedConstants};

use crate::baselines::{exact_min_multicover, greedy_fill, ExactConfig};
use crate::error::{Error, Result};
use crate::hypergraph::{
    deficits_from_mask, is_multicover, validate_feasible_instance, Cover, Demands, Hypergraph,
    InstanceReport,
};
use crate::lp::{to_f64, LpProblem, LpSolution, Rational};

/// Relative slack on the branch test |C₁| ≥ α·Opt*.
pub const BRANCH_GUARD: f64 = 1e-12;
/// Relative slack on the deterministic-branch bound assertion.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThresholdPartition {
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub c3: Vec<usize>,
    pub zero: Vec<usize>,
}

/// Exact split of the edges at 1/λ = 2/(δ+1) and 1/δ.
pub fn partition_edges(sol: &LpSolution, dc: &DerivedConstants) -> ThresholdPartition {
    let high = Rational::from_integer(1.into()) / &dc.lambda;
    let low = Rational::new(1.into(), dc.delta.into());
    let mut p = ThresholdPartition::default();
    for (j, x) in sol.x.iter().enumerate() {
        let bucket = if *x >= high {
            &mut p.c1
        } else if *x >= low {
            &mut p.c2
        } else if *x > Rational::from_integer(0.into()) {
            &mut p.c3
        } else {
            &mut p.zero
        };
        bucket.push(j);
    }
    p
}

fn guard(eps: f64) -> Rational {
    Rational::from_float(eps).expect("finite guard")
}

/// |C₁| ≥ α·Opt*, evaluated on a rational enclosure of α. Values within a
/// relative 10⁻¹² of the boundary count as satisfied.
pub fn deterministic_branch_applies(
    partition: &ThresholdPartition,
    sol: &LpSolution,
    dc: &DerivedConstants,
) -> bool {
    let (alpha_lo, _) = dc.alpha_bounds();
    let target = alpha_lo * &sol.value * (Rational::from_integer(1.into()) - guard(BRANCH_GUARD));
    Rational::from_integer(partition.c1.len().into()) >= target
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Deterministic,
    Randomized,
    /// The exact oracle answered (explicit opt-in for small instances).
    Exact,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Deterministic => "deterministic",
            Branch::Randomized => "randomized",
            Branch::Exact => "exact",
        }
    }
}

/// Whether the instance is large enough for the success-probability
/// argument (n ≥ 16 exp(a_{k,ε}) / ε^{k+2}).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRegime {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    /// X: edges chosen before repair.
    pub picked: usize,
    /// Y: vertices fully covered before repair.
    pub fully_covered: usize,
    pub repairs: usize,
    pub cover_size: usize,
    /// cover_size / Opt*.
    pub achieved_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub cover: Cover,
    pub branch: Branch,
    /// Case-1 ratio on the deterministic branch, case-2 ratio on the
    /// randomized branch, 1 for the exact oracle.
    pub guaranteed_ratio: f64,
    pub trials: Vec<TrialStats>,
    pub best_trial_index: Option<usize>,
    pub opt_star: Rational,
    pub bound_regime: BoundRegime,
    /// C₃ edges whose inclusion probability had to be clamped to 1.
    pub clamped_c3: usize,
}

impl RunResult {
    pub fn achieved_ratio(&self) -> f64 {
        self.cover.len() as f64 / to_f64(&self.opt_star)
    }
}

/// Coin biases of one run.
#[derive(Debug, Clone)]
struct RoundingPlan {
    k: u32,
    c2: Vec<(usize, f64)>,
    c3: Vec<(usize, f64)>,
    clamped_c3: usize,
}

/// One trial's RNG: ChaCha8 keyed by `seed`, on stream `trial`, so trials
/// are independent of each other and of evaluation order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Everything a run needs after the LP solve, shared read-only by trials.
#[derive(Debug, Clone)]
pub struct Prepared<'a> {
    h: &'a Hypergraph,
    d: &'a Demands,
    pub report: InstanceReport,
    pub lp: LpSolution,
    pub constants: DerivedConstants,
    pub partition: ThresholdPartition,
    plan: RoundingPlan,
}

impl<'a> Prepared<'a> {
    pub fn new(h: &'a Hypergraph, d: &'a Demands, ap: &AlgorithmParams) -> Result<Self> {
        let report = validate_feasible_instance(h, d)?;
        let constants = derive_constants(&report.params, ap)?;
        let lp = LpProblem::relaxation(h, d)?.solve()?;
        Self::with_solution(h, d, report, constants, lp)
    }

    pub fn with_solution(
        h: &'a Hypergraph,
        d: &'a Demands,
        report: InstanceReport,
        constants: DerivedConstants,
        lp: LpSolution,
    ) -> Result<Self> {
        let partition = partition_edges(&lp, &constants);
        let c1 = Cover::new(h.num_edges(), partition.c1.iter().copied())?;
        if let Some(&j) = report.forced_edges.iter().find(|&&j| !c1.contains(j)) {
            return Err(Error::InternalInvariantViolation(format!(
                "forced edge {j} has x* < 1/λ"
            )));
        }
        let one = Rational::from_integer(1.into());
        let c3_scale =
            (&one - &constants.epsilon_pow_k) * Rational::from_integer(constants.delta.into());
        let c2 = partition
            .c2
            .iter()
            .map(|&j| (j, to_f64(&(&constants.lambda0 * &lp.x[j]))))
            .collect();
        let mut clamped_c3 = 0;
        let c3 = partition
            .c3
            .iter()
            .map(|&j| {
                let p = &c3_scale * &lp.x[j];
                if p > one {
                    clamped_c3 += 1;
                    (j, 1.0)
                } else {
                    (j, to_f64(&p))
                }
            })
            .collect();
        let plan = RoundingPlan {
            k: constants.k,
            c2,
            c3,
            clamped_c3,
        };
        Ok(Self {
            h,
            d,
            report,
            lp,
            constants,
            partition,
            plan,
        })
    }

    pub fn deterministic_branch_applies(&self) -> bool {
        deterministic_branch_applies(&self.partition, &self.lp, &self.constants)
    }

    pub fn bound_regime(&self) -> BoundRegime {
        if self.h.num_vertices() as f64 >= self.constants.regime_min_vertices() {
            BoundRegime::In
        } else {
            BoundRegime::Out
        }
    }

    fn result(&self, cover: Cover, branch: Branch, guaranteed_ratio: f64) -> RunResult {
        RunResult {
            cover,
            branch,
            guaranteed_ratio,
            trials: Vec::new(),
            best_trial_index: None,
            opt_star: self.lp.value.clone(),
            bound_regime: self.bound_regime(),
            clamped_c3: self.plan.clamped_c3,
        }
    }

    /// C₁ ∪ C₂, checked for feasibility and for
    /// |C| ≤ (1 − (b−1)ε^k exp(a_{k,ε})/(18ℓ))·δ·Opt*.
    pub fn run_deterministic_branch(&self) -> Result<RunResult> {
        let chosen = self.partition.c1.iter().chain(&self.partition.c2).copied();
        let cover = Cover::new(self.h.num_edges(), chosen)?;
        if !is_multicover(self.h, self.d, &cover)? {
            return Err(Error::InternalInvariantViolation(
                "C1 ∪ C2 is not a multicover".into(),
            ));
        }
        let limit = self.constants.case1_ratio_upper()
            * &self.lp.value
            * (Rational::from_integer(1.into()) + guard(BOUND_TOLERANCE));
        if Rational::from_integer(cover.len().into()) > limit {
            return Err(Error::InternalInvariantViolation(format!(
                "deterministic cover of size {} exceeds {:.6}·Opt*",
                cover.len(),
                self.constants.case1_ratio
            )));
        }
        Ok(self.result(cover, Branch::Deterministic, self.constants.case1_ratio))
    }

    /// Membership mask after C₁ and the coin flips, before repair.
    pub fn round<R: Rng>(&self, rng: &mut R) -> Vec<bool> {
        let mut mask = vec![false; self.h.num_edges()];
        for &j in &self.partition.c1 {
            mask[j] = true;
        }
        for &(j, p) in &self.plan.c2 {
            // always draw all k flips so the stream layout is fixed
            let mut hit = false;
            for _ in 0..self.plan.k {
                hit |= rng.gen_bool(p.clamp(0.0, 1.0));
            }
            mask[j] = hit;
        }
        for &(j, p) in &self.plan.c3 {
            mask[j] = rng.gen_bool(p);
        }
        mask
    }

    /// One randomized trial, post repair.
    pub fn randomized_trial(&self, seed: u64, trial_index: usize) -> Result<(Cover, TrialStats)> {
        let n = self.h.num_vertices();
        let mut c1_mask = vec![false; self.h.num_edges()];
        for &j in &self.partition.c1 {
            c1_mask[j] = true;
        }
        let after_c1 = deficits_from_mask(self.h, self.d, &c1_mask);
        if let Some(v) = after_c1.iter().position(|&x| x > 1) {
            return Err(Error::InternalInvariantViolation(format!(
                "vertex {v} has deficit {} after C1",
                after_c1[v]
            )));
        }

        let mut rng = trial_rng(seed, trial_index as u64);
        let mut mask = self.round(&mut rng);
        let picked = mask.iter().filter(|&&c| c).count();
        let mut deficits = deficits_from_mask(self.h, self.d, &mask);
        let fully_covered = deficits.iter().filter(|&&x| x == 0).count();
        let repairs = repair_mask(self.h, &mut deficits, &mut mask, &self.partition)?;
        let cover = Cover::from_mask(&mask);
        if cover.len() > picked + (n - fully_covered) {
            return Err(Error::InternalInvariantViolation(format!(
                "trial {trial_index}: |C| = {} > X + n − Y = {}",
                cover.len(),
                picked + n - fully_covered
            )));
        }
        let stats = TrialStats {
            picked,
            fully_covered,
            repairs,
            cover_size: cover.len(),
            achieved_ratio: cover.len() as f64 / self.lp.value_f64(),
        };
        Ok((cover, stats))
    }

    /// `trials` independent trials; the smallest cover wins, lowest trial
    /// index on ties.
    pub fn run_randomized_branch(&self, seed: u64, trials: usize) -> Result<RunResult> {
        let outcomes: Vec<(Cover, TrialStats)> = (0..trials)
            .into_par_iter()
            .map(|i| self.randomized_trial(seed, i))
            .collect::<Result<_>>()?;
        let best = outcomes
            .iter()
            .enumerate()
            .min_by_key(|(i, (c, _))| (c.len(), *i))
            .map(|(i, _)| i)
            .ok_or_else(|| Error::InvalidParams("trials must be >= 1".into()))?;
        let ratio = to_f64(&self.constants.case2_ratio);
        let cover = outcomes[best].0.clone();
        let mut result = self.result(cover, Branch::Randomized, ratio);
        result.trials = outcomes.into_iter().map(|(_, s)| s).collect();
        result.best_trial_index = Some(best);
        Ok(result)
    }
}

/// Greedy repair: C₂ edges first, then any other unchosen edge. Returns the
/// number of edges added.
fn repair_mask(
    h: &Hypergraph,
    deficits: &mut [u32],
    mask: &mut [bool],
    partition: &ThresholdPartition,
) -> Result<usize> {
    let mut added = greedy_fill(h, deficits, mask, &partition.c2);
    if deficits.iter().any(|&x| x > 0) {
        let rest: Vec<usize> = partition
            .c3
            .iter()
            .chain(&partition.zero)
            .copied()
            .collect();
        added += greedy_fill(h, deficits, mask, &rest);
    }
    match deficits.iter().position(|&x| x > 0) {
        Some(vertex) => Err(Error::RepairImpossible { vertex }),
        None => Ok(added),
    }
}

/// Completes `cover` to a multicover with unchosen C₂ edges (most deficient
/// vertices served first, lowest index on ties), falling back to other edges
/// when no C₂ edge helps.
pub fn repair(
    h: &Hypergraph,
    d: &Demands,
    cover: &Cover,
    partition: &ThresholdPartition,
) -> Result<(Cover, usize)> {
    let mut mask = cover.to_mask(h.num_edges());
    let mut deficits = deficits_from_mask(h, d, &mask);
    let added = repair_mask(h, &mut deficits, &mut mask, partition)?;
    Ok((Cover::from_mask(&mask), added))
}

/// The full hybrid algorithm with repeated trials.
pub fn run_repeated(h: &Hypergraph, d: &Demands, ap: &AlgorithmParams) -> Result<RunResult> {
    Prepared::new(h, d, ap)?.run(ap)
}

impl Prepared<'_> {
    /// Branch selection and execution on an already solved instance.
    pub fn run(&self, ap: &AlgorithmParams) -> Result<RunResult> {
        if ap.exact_shortcut && self.h.num_edges() <= ap.exact_fallback_threshold {
            if let Ok(exact) = exact_min_multicover(self.h, self.d, ExactConfig::default()) {
                return Ok(self.result(exact.cover, Branch::Exact, 1.0));
            }
        }
        if self.deterministic_branch_applies() {
            self.run_deterministic_branch()
        } else {
            self.run_randomized_branch(ap.seed, ap.trials)
        }
    }
}
