//! One algorithm on one instance, with the LP optimum for the ratios.

use multicover::baselines::{
    exact_min_multicover, greedy_multicover, harmonic, threshold_cover, ExactConfig,
};
use multicover::hybrid::{BoundRegime, Prepared, TrialStats};
use multicover::lp::to_f64;
use multicover::{
    is_multicover, validate_feasible_instance, AlgorithmParams, Cover, Demands, Error, Hypergraph,
    InstanceReport, LpProblem, LpSolution, Rational,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Algo {
    Hybrid,
    Greedy,
    Threshold,
    Exact,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Hybrid => "hybrid",
            Algo::Greedy => "greedy",
            Algo::Threshold => "threshold",
            Algo::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub params: AlgorithmParams,
    pub exact: ExactConfig,
}

/// Instance data shared by every algorithm run on it.
#[derive(Debug, Clone)]
pub struct Solved {
    pub report: InstanceReport,
    pub lp: LpSolution,
}

impl Solved {
    pub fn new(h: &Hypergraph, d: &Demands) -> multicover::Result<Self> {
        let report = validate_feasible_instance(h, d)?;
        let lp = LpProblem::relaxation(h, d)?.solve()?;
        Ok(Self { report, lp })
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub cover: Cover,
    /// Certified optimum, exact algorithm only.
    pub opt: Option<usize>,
    pub guaranteed_ratio: Option<f64>,
    pub branch: Option<&'static str>,
    pub trials: Vec<TrialStats>,
    pub best_trial_index: Option<usize>,
    pub bound_regime: Option<BoundRegime>,
    /// Trials meeting |C| ≤ (1 − ½(1−ε)ε^k)·δ·Opt*.
    pub trial_successes: Option<usize>,
}

pub fn ratio(size: usize, opt_star: &Rational) -> Rational {
    Rational::from_integer(size.into()) / opt_star
}

pub fn run_algorithm(
    h: &Hypergraph,
    d: &Demands,
    solved: &Solved,
    algo: Algo,
    config: &RunConfig,
) -> multicover::Result<Outcome> {
    let mut out = Outcome {
        cover: Cover::default(),
        opt: None,
        guaranteed_ratio: None,
        branch: None,
        trials: Vec::new(),
        best_trial_index: None,
        bound_regime: None,
        trial_successes: None,
    };
    match algo {
        Algo::Hybrid => {
            let constants =
                multicover::hybrid::derive_constants(&solved.report.params, &config.params)?;
            let prepared =
                Prepared::with_solution(h, d, solved.report.clone(), constants, solved.lp.clone())?;
            let r = prepared.run(&config.params)?;
            let bar = &prepared.constants.case2_ratio * &solved.lp.value;
            out.trial_successes = Some(
                r.trials
                    .iter()
                    .filter(|t| Rational::from_integer(t.cover_size.into()) <= bar)
                    .count(),
            );
            out.guaranteed_ratio = Some(r.guaranteed_ratio);
            out.branch = Some(r.branch.as_str());
            out.best_trial_index = r.best_trial_index;
            out.bound_regime = Some(r.bound_regime);
            out.trials = r.trials;
            out.cover = r.cover;
        }
        Algo::Greedy => {
            out.cover = greedy_multicover(h, d)?;
            out.guaranteed_ratio = Some(to_f64(&harmonic(solved.report.params.max_edge_size)));
        }
        Algo::Threshold => {
            out.cover = threshold_cover(h, d, &solved.lp)?;
            out.guaranteed_ratio = Some(solved.report.params.delta as f64);
        }
        Algo::Exact => {
            let r = exact_min_multicover(h, d, config.exact)?;
            out.opt = Some(r.opt);
            out.cover = r.cover;
        }
    }
    if !is_multicover(h, d, &out.cover)? {
        return Err(Error::InternalInvariantViolation(format!(
            "{} returned an infeasible cover",
            algo.as_str()
        )));
    }
    Ok(out)
}
