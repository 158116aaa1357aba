use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use multicover::baselines::{ExactConfig, LowerBound};
use multicover::instance::{parse_instance, serialize_instance, GeneratorSpec, RandomSpec};
use multicover::{AlgorithmParams, Rational};
use multicover_cli::bench::{run_bench, write_records, BenchArgs};
use multicover_cli::gap::{gap_report, write_gap_rows};
use multicover_cli::run::{Algo, RunConfig};
use multicover_cli::solve::{render_solve, Format, SolveArgs};
use multicover_cli::{parse_epsilon, read_file, write_output, CliResult};

#[derive(Parser)]
#[command(
    name = "multicover",
    version,
    about = "Set multicover solvers and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "hybrid")]
        algo: Algo,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the LP relaxation in LP text format.
        #[arg(long)]
        dump_lp: Option<PathBuf>,
    },
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Run algorithms over every `*.msc` file of a directory.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "hybrid,greedy,threshold,exact"
        )]
        algos: Vec<Algo>,
        #[command(flatten)]
        params: ParamArgs,
        /// Skip the exact oracle above this many edges.
        #[arg(long, default_value_t = 40)]
        exact_max_edges: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Integrality gap table for the F₂ᵏ family, k = 2..=k-max.
    GapReport {
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random instance with b_min + 1 ≤ d(v) for all v.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_edge_size: usize,
        #[arg(long, default_value_t = 2)]
        b_min: u32,
        #[arg(long)]
        b_max: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Odd-dot-product family over F₂ᵏ with uniform demand b.
    Gap {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// b-vertex cover of a uniform base (with b − 1 universal vertices
    /// added), written as a multicover instance on the dual.
    Reduce {
        /// Base hypergraph; its demand line is ignored.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Exact rational, e.g. 1/2.
    #[arg(long, default_value = "1/2", value_parser = epsilon_arg)]
    epsilon: Rational,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge count up to which --exact-shortcut may call the oracle.
    #[arg(long, default_value_t = 20)]
    exact_threshold: usize,
    /// Answer small instances with the exact oracle instead of rounding.
    #[arg(long)]
    exact_shortcut: bool,
    /// Node budget of the exact oracle.
    #[arg(long, default_value_t = 5_000_000)]
    budget: u64,
    /// Use the cheap deficit bound instead of the residual LP in the oracle.
    #[arg(long)]
    deficit_bound: bool,
}

fn epsilon_arg(s: &str) -> Result<Rational, String> {
    parse_epsilon(s).map_err(|e| e.to_string())
}

impl ParamArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            params: AlgorithmParams {
                k: self.k,
                epsilon: self.epsilon.clone(),
                trials: self.trials,
                seed: self.seed,
                exact_fallback_threshold: self.exact_threshold,
                exact_shortcut: self.exact_shortcut,
            },
            exact: ExactConfig {
                node_budget: self.budget,
                bound: if self.deficit_bound {
                    LowerBound::Deficit
                } else {
                    LowerBound::Lp
                },
            },
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve {
            input,
            algo,
            params,
            format,
            output,
            dump_lp,
        } => {
            let args = SolveArgs {
                input,
                algo,
                config: params.config(),
                format,
                output: output.clone(),
                dump_lp,
            };
            write_output(output.as_deref(), &render_solve(&args)?)
        }
        Command::Gen { family } => {
            let (spec, output) = match family {
                GenCommand::Random {
                    n,
                    m,
                    max_edge_size,
                    b_min,
                    b_max,
                    seed,
                    output,
                } => {
                    let spec = RandomSpec {
                        n,
                        m,
                        max_edge_size,
                        b_min,
                        b_max: b_max.unwrap_or(b_min),
                        seed,
                    };
                    (GeneratorSpec::Random(spec), output)
                }
                GenCommand::Gap { k, b, output } => (GeneratorSpec::Gap { k, b }, output),
                GenCommand::Reduce { input, b, output } => {
                    let (base, _) = parse_instance(&read_file(&input)?)?;
                    (GeneratorSpec::Reduction { base, b }, output)
                }
            };
            let (h, d) = spec.generate()?;
            write_output(output.as_deref(), &serialize_instance(&h, &d))
        }
        Command::Bench {
            corpus,
            algos,
            params,
            exact_max_edges,
            format,
            output,
        } => {
            let args = BenchArgs {
                corpus,
                algos,
                config: params.config(),
                exact_max_edges,
            };
            let records = run_bench(&args)?;
            write_output(output.as_deref(), &write_records(&records, format)?)
        }
        Command::GapReport {
            k_max,
            b,
            budget,
            format,
            output,
        } => {
            let config = ExactConfig {
                node_budget: budget,
                ..ExactConfig::default()
            };
            let rows = gap_report(k_max, b, config)?;
            write_output(output.as_deref(), &write_gap_rows(&rows, format)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
