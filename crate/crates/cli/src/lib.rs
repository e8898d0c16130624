//! Ballot file I/O, planted instance generation and the solve/bench drivers
//! behind the `mav` binary.

pub mod ballot;
pub mod error;
pub mod generate;
pub mod report;
pub mod run;

pub use ballot::{parse_election, render_election};
pub use error::{CliError, CliResult};
pub use generate::generate_instance;
pub use report::{BenchRecord, DiagnosticsRecord, RunReport, SummaryRecord};
pub use run::{bench, solve_election, Algorithm, BenchLine, BenchOptions, Budgets, KMode, OracleMode, SolveOptions};
