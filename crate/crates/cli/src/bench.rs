//! Corpus benchmark: every algorithm on every instance file, one record each.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use multicover::hypergraph::InstanceReport;
use multicover::instance::parse_instance;
use multicover::lp::to_f64;
use multicover::Hypergraph;

use crate::run::{ratio, run_algorithm, Algo, Outcome, RunConfig, Solved};
use crate::solve::{instance_id, Format};
use crate::{read_file, CliError, CliResult};

/// CSV column order; matches the field order of [`BenchRecord`].
pub const COLUMNS: [&str; 22] = [
    "instance",
    "n",
    "m",
    "max_degree",
    "max_edge_size",
    "b_min",
    "delta",
    "algorithm",
    "k",
    "epsilon",
    "trials",
    "seed",
    "opt_star",
    "opt",
    "cover_size",
    "achieved_ratio",
    "guaranteed_ratio",
    "branch",
    "success",
    "success_frequency",
    "wall_ms",
    "error",
];

/// Instance id of the trailing aggregate row.
pub const SUMMARY_ID: &str = "SUMMARY";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_edge_size: Option<usize>,
    pub b_min: Option<u32>,
    pub delta: Option<usize>,
    pub algorithm: String,
    pub k: Option<u32>,
    pub epsilon: Option<String>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    /// Exact LP optimum, `p/q`.
    pub opt_star: Option<String>,
    pub opt: Option<usize>,
    pub cover_size: Option<usize>,
    pub achieved_ratio: Option<f64>,
    pub guaranteed_ratio: Option<f64>,
    pub branch: Option<String>,
    /// cover_size ≤ guaranteed_ratio · opt_star.
    pub success: Option<bool>,
    /// Share of randomized trials with |C| ≤ (1 − ½(1−ε)ε^k)·δ·opt_star.
    pub success_frequency: Option<f64>,
    pub wall_ms: Option<f64>,
    pub error: Option<String>,
    #[serde(skip)]
    pub trial_successes: Option<(usize, usize)>,
}

impl BenchRecord {
    pub fn new(instance: &str, algo: Algo, config: &RunConfig) -> Self {
        let hybrid = algo == Algo::Hybrid;
        let p = &config.params;
        Self {
            instance: instance.to_string(),
            n: None,
            m: None,
            max_degree: None,
            max_edge_size: None,
            b_min: None,
            delta: None,
            algorithm: algo.as_str().to_string(),
            k: hybrid.then_some(p.k),
            epsilon: hybrid.then(|| p.epsilon.to_string()),
            trials: hybrid.then_some(p.trials),
            seed: hybrid.then_some(p.seed),
            opt_star: None,
            opt: None,
            cover_size: None,
            achieved_ratio: None,
            guaranteed_ratio: None,
            branch: None,
            success: None,
            success_frequency: None,
            wall_ms: None,
            error: None,
            trial_successes: None,
        }
    }

    pub fn describe(&mut self, h: &Hypergraph, report: Option<&InstanceReport>) {
        self.n = Some(h.num_vertices());
        self.m = Some(h.num_edges());
        if let Some(r) = report {
            self.max_degree = Some(r.params.max_degree);
            self.max_edge_size = Some(r.params.max_edge_size);
            self.b_min = Some(r.params.b_min);
            self.delta = Some(r.params.delta);
        }
    }

    pub fn fill(&mut self, solved: &Solved, outcome: &Outcome, wall_ms: Option<f64>) {
        let size = outcome.cover.len();
        let opt_star = to_f64(&solved.lp.value);
        self.opt_star = Some(solved.lp.value.to_string());
        self.opt = outcome.opt;
        self.cover_size = Some(size);
        self.achieved_ratio = Some(to_f64(&ratio(size, &solved.lp.value)));
        self.guaranteed_ratio = outcome.guaranteed_ratio;
        self.branch = outcome.branch.map(str::to_string);
        self.success = outcome
            .guaranteed_ratio
            .map(|g| size as f64 <= g * opt_star * (1.0 + 1e-12));
        if let Some(hits) = outcome
            .trial_successes
            .filter(|_| !outcome.trials.is_empty())
        {
            let total = outcome.trials.len();
            self.success_frequency = Some(hits as f64 / total as f64);
            self.trial_successes = Some((hits, total));
        }
        self.wall_ms = wall_ms;
    }
}

/// Record skeleton for `algo` on a parsed instance.
pub fn record_for(
    instance: &str,
    h: &Hypergraph,
    solved: &Solved,
    algo: Algo,
    config: &RunConfig,
) -> BenchRecord {
    let mut r = BenchRecord::new(instance, algo, config);
    r.describe(h, Some(&solved.report));
    r
}

#[derive(Debug, Clone)]
pub struct BenchArgs {
    pub corpus: PathBuf,
    pub algos: Vec<Algo>,
    pub config: RunConfig,
    /// The exact oracle is skipped on instances with more edges.
    pub exact_max_edges: usize,
}

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn bench_instance(path: &Path, args: &BenchArgs) -> Vec<BenchRecord> {
    let id = instance_id(path);
    let mut algos = args.algos.clone();
    algos.sort();
    algos.dedup();
    let fail_all = |msg: String, h: Option<&Hypergraph>| {
        algos
            .iter()
            .map(|&a| {
                let mut r = BenchRecord::new(&id, a, &args.config);
                if let Some(h) = h {
                    r.describe(h, None);
                }
                r.error = Some(msg.clone());
                r
            })
            .collect::<Vec<_>>()
    };
    let parsed = read_file(path)
        .map_err(|e| e.to_string())
        .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()));
    let (h, d) = match parsed {
        Ok(x) => x,
        Err(msg) => return fail_all(msg, None),
    };
    let solved = match Solved::new(&h, &d) {
        Ok(s) => s,
        Err(e) => return fail_all(e.to_string(), Some(&h)),
    };
    let mut records: Vec<BenchRecord> = algos
        .iter()
        .map(|&algo| {
            let mut r = record_for(&id, &h, &solved, algo, &args.config);
            if algo == Algo::Exact && h.num_edges() > args.exact_max_edges {
                r.error = Some(format!("skipped: m > {}", args.exact_max_edges));
                return r;
            }
            let start = Instant::now();
            match run_algorithm(&h, &d, &solved, algo, &args.config) {
                Ok(outcome) => r.fill(&solved, &outcome, Some(elapsed_ms(start))),
                Err(e) => {
                    r.opt_star = Some(solved.lp.value.to_string());
                    r.wall_ms = Some(elapsed_ms(start));
                    r.error = Some(e.to_string());
                }
            }
            r
        })
        .collect();
    if let Some(opt) = records.iter().find_map(|r| r.opt) {
        for r in &mut records {
            r.opt = Some(opt);
        }
    }
    records
}

/// Instance files (`*.msc`) of a corpus directory, sorted by name.
pub fn corpus_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "msc") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Pooled single-trial success frequency over all hybrid records.
pub fn summary(records: &[BenchRecord]) -> Option<BenchRecord> {
    let hybrid: Vec<&BenchRecord> = records
        .iter()
        .filter(|r| r.algorithm == Algo::Hybrid.as_str())
        .collect();
    let first = hybrid.first()?;
    let (hits, total) = hybrid
        .iter()
        .filter_map(|r| r.trial_successes)
        .fold((0, 0), |(h, t), (a, b)| (h + a, t + b));
    let mut s = BenchRecord {
        instance: SUMMARY_ID.to_string(),
        k: first.k,
        epsilon: first.epsilon.clone(),
        seed: first.seed,
        trials: Some(total),
        success_frequency: (total > 0).then(|| hits as f64 / total as f64),
        ..BenchRecord::new(SUMMARY_ID, Algo::Hybrid, &RunConfig::default())
    };
    s.wall_ms = Some(hybrid.iter().filter_map(|r| r.wall_ms).sum::<f64>());
    s.trial_successes = Some((hits, total));
    Some(s)
}

/// All records, sorted by (instance, algorithm), then the summary row.
pub fn run_bench(args: &BenchArgs) -> CliResult<Vec<BenchRecord>> {
    let files = corpus_files(&args.corpus)?;
    let mut records: Vec<BenchRecord> = files
        .par_iter()
        .flat_map_iter(|p| bench_instance(p, args))
        .collect();
    records.sort_by(|a, b| {
        (a.instance.as_str(), a.algorithm.as_str())
            .cmp(&(b.instance.as_str(), b.algorithm.as_str()))
    });
    if let Some(s) = summary(&records) {
        records.push(s);
    }
    Ok(records)
}

pub fn write_records(records: &[BenchRecord], format: Format) -> CliResult<String> {
    let encode = |e: &dyn std::fmt::Display| CliError::Encode(e.to_string());
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(Vec::new());
            w.write_record(COLUMNS).map_err(|e| encode(&e))?;
            for r in records {
                w.serialize(r).map_err(|e| encode(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| encode(&e))?;
            String::from_utf8(bytes).map_err(|e| encode(&e))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).map_err(|e| encode(&e))?;
            s.push('\n');
            Ok(s)
        }
    }
}
