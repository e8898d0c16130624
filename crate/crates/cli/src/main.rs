use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mav_cli::run::{parse_force_case, parse_range};
use mav_cli::{
    bench, generate_instance, parse_election, render_election, solve_election, Algorithm, BenchOptions, Budgets,
    CliError, CliResult, KMode, OracleMode, SolveOptions,
};

#[derive(Parser)]
#[command(name = "mav", version, about = "Minimax approval voting solvers")]
struct Cli {
    /// Worker threads for the parallel solvers (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct SolverArgs {
    /// Slack of the approximation scheme, in (0, 1).
    #[arg(long, default_value_t = 0.9)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Auxiliary solver: 1, 2, 3 or auto.
    #[arg(long, default_value = "auto")]
    force_case: String,
    /// Also run the exact solver for the ratio: on, off or auto.
    #[arg(long, default_value = "auto")]
    oracle: String,
    /// Report wall-clock time (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

impl SolverArgs {
    fn options(&self, algorithm: Algorithm) -> CliResult<SolveOptions> {
        Ok(SolveOptions {
            algorithm,
            epsilon: self.epsilon,
            seed: self.seed,
            force_case: parse_force_case(&self.force_case)?,
            oracle: self.oracle.parse::<OracleMode>()?,
            timing: self.timing,
            budgets: Budgets::from_env()?,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one ballot file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// exact, minisum, kcompletion or ptas.
        #[arg(long, default_value = "ptas")]
        algorithm: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Write a planted instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run algorithms over a seeded sweep of instances, one JSON line each.
    Bench {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value = "2..8")]
        n_range: String,
        #[arg(long, default_value = "3..10")]
        m_range: String,
        /// random, half or a fixed integer.
        #[arg(long, default_value = "random")]
        k_mode: String,
        /// Generate planted instances at this radius.
        #[arg(long)]
        radius: Option<usize>,
        /// Comma-separated algorithm list.
        #[arg(long, default_value = "kcompletion,ptas")]
        algorithms: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Solve {
            input,
            algorithm,
            format,
            solver,
        } => {
            let election = parse_election(&read_file(&input)?)?;
            let report = solve_election(&election, &solver.options(algorithm.parse()?)?)?;
            Ok(match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            })
        }
        Command::Gen {
            n,
            m,
            k,
            radius,
            seed,
            out,
        } => {
            let (election, _) = generate_instance(n, m, k, radius, seed)?;
            let text = render_election(&election);
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Bench {
            count,
            n_range,
            m_range,
            k_mode,
            radius,
            algorithms,
            solver,
        } => {
            let algorithms = algorithms
                .split(',')
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<CliResult<Vec<Algorithm>>>()?;
            let opts = BenchOptions {
                count,
                n_range: parse_range(&n_range)?,
                m_range: parse_range(&m_range)?,
                k_mode: k_mode.parse::<KMode>()?,
                radius,
                algorithms,
                solve: solver.options(Algorithm::Ptas)?,
            };
            let mut out = String::new();
            for line in bench(&opts)? {
                out.push_str(&line.to_json());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("mav: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mav: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
