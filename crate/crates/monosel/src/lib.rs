//! Scenario runner, property suites and demonstrations for `monosel-core`.

pub mod counterexample;
pub mod error;
pub mod numfmt;
pub mod runner;
pub mod scenario;
pub mod suites;

pub use error::{CliError, Result, EXIT_FAIL, EXIT_INVALID, EXIT_PASS};
pub use runner::{run_scenario, run_scenario_file, Outcome, RunOptions, RunReport};
pub use scenario::Scenario;
pub use suites::{run_suite, SuiteReport};
