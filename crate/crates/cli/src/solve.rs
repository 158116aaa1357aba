use std::path::{Path, PathBuf};

use serde::Serialize;

use multicover::hybrid::{BoundRegime, TrialStats};
use multicover::instance::parse_instance;
use multicover::lp::to_f64;
use multicover::LpProblem;

use crate::bench::{record_for, write_records, BenchRecord};
use crate::run::{run_algorithm, Algo, RunConfig, Solved};
use crate::{read_file, write_output, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub input: PathBuf,
    pub algo: Algo,
    pub config: RunConfig,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub dump_lp: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct TrialRow {
    picked: usize,
    fully_covered: usize,
    repairs: usize,
    cover_size: usize,
    achieved_ratio: f64,
}

impl From<&TrialStats> for TrialRow {
    fn from(t: &TrialStats) -> Self {
        Self {
            picked: t.picked,
            fully_covered: t.fully_covered,
            repairs: t.repairs,
            cover_size: t.cover_size,
            achieved_ratio: t.achieved_ratio,
        }
    }
}

/// Everything `solve` reports; contains no timing so it is reproducible.
#[derive(Debug, Serialize)]
struct SolveReport {
    #[serde(flatten)]
    record: BenchRecord,
    opt_star_value: f64,
    cover: Vec<usize>,
    bound_regime: Option<&'static str>,
    best_trial: Option<usize>,
    trial_stats: Vec<TrialRow>,
}

pub fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs `solve` and returns the rendered report.
pub fn render_solve(args: &SolveArgs) -> CliResult<String> {
    let text = read_file(&args.input)?;
    let (h, d) = parse_instance(&text)?;
    if let Some(path) = &args.dump_lp {
        let lp = LpProblem::relaxation(&h, &d)?;
        write_output(Some(path), &lp.to_lp_format())?;
    }
    let solved = Solved::new(&h, &d)?;
    let outcome = run_algorithm(&h, &d, &solved, args.algo, &args.config)?;
    let mut record = record_for(
        &instance_id(&args.input),
        &h,
        &solved,
        args.algo,
        &args.config,
    );
    record.fill(&solved, &outcome, None);
    match args.format {
        Format::Csv => write_records(std::slice::from_ref(&record), Format::Csv),
        Format::Json => {
            let report = SolveReport {
                record,
                opt_star_value: to_f64(&solved.lp.value),
                cover: outcome.cover.one_based(),
                bound_regime: outcome.bound_regime.map(|r| match r {
                    BoundRegime::In => "in",
                    BoundRegime::Out => "out",
                }),
                best_trial: outcome.best_trial_index,
                trial_stats: outcome.trials.iter().map(TrialRow::from).collect(),
            };
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| crate::CliError::Encode(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}
