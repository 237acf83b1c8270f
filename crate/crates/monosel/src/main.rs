use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use monosel::error::{CliError, Result, EXIT_FAIL, EXIT_PASS};
use monosel::{counterexample, numfmt, runner, suites};
use monosel_core::gns::{parseval_check, verify_kills_null, FiniteState, GnsModel, NullCheck, Projection};

#[derive(Parser)]
#[command(name = "monosel", version, about = "Suprema of directed families by monotone selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Sup {
        #[arg(long)]
        scenario: PathBuf,
        /// Overrides the scenario's eps.
        #[arg(long)]
        eps: Option<f64>,
        /// Write the iteration trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a randomized property suite.
    Verify {
        /// selection, maps, gns, hermitian, lattice or all.
        #[arg(long)]
        suite: String,
        #[arg(long, env = "MONOSEL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Run a built-in counterexample.
    Counterexample {
        /// nonfaithful or hermitian-join.
        #[arg(long)]
        name: String,
    },
    /// Parseval check for a finite state and disjoint projections.
    Gns {
        /// Comma-separated state weights.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        weights: Vec<f64>,
        /// JSON file: an array of 0-based supports, or {"projections": [...]}.
        #[arg(long)]
        projections: PathBuf,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ProjectionFile {
    Bare(Vec<Vec<usize>>),
    Wrapped { projections: Vec<Vec<usize>> },
}

fn load_projections(path: &Path) -> Result<Vec<Vec<usize>>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let parsed: ProjectionFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Schema(format!(
            "{}: expected an array of index arrays or {{\"projections\": [...]}} ({e})",
            path.display()
        ))
    })?;
    Ok(match parsed {
        ProjectionFile::Bare(p) | ProjectionFile::Wrapped { projections: p } => p,
    })
}

fn gns(weights: Vec<f64>, projections: &Path) -> Result<i32> {
    let model = GnsModel::new(FiniteState::new(weights)?);
    let projections = load_projections(projections)?
        .iter()
        .map(|idx| Projection::from_indices(model.dim(), idx).map_err(CliError::from))
        .collect::<Result<Vec<_>>>()?;
    let r = parseval_check(&model, &projections)?;
    println!("projections: {}", projections.len());
    println!("lhs: {}", numfmt::num(r.lhs));
    println!("rhs: {}", numfmt::num(r.rhs));
    println!("difference: {}", numfmt::num((r.lhs - r.rhs).abs()));
    let mut rng = suites::case_rng(0, 0, 0);
    match verify_kills_null(&model, &mut rng, 4096) {
        NullCheck::Holds { checked, exhaustive } => {
            println!("faithful: true ({checked} supports{})", if exhaustive { ", exhaustive" } else { "" })
        }
        NullCheck::Counterexample(p) => {
            let support: Vec<usize> = (0..p.dim()).filter(|&i| p.support()[i]).collect();
            println!("faithful: false (psi vanishes on support {support:?})")
        }
    }
    println!("outcome: {}", if r.equal { "pass" } else { "fail" });
    Ok(if r.equal { EXIT_PASS } else { EXIT_FAIL })
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Sup { scenario, eps, trace } => {
            let report = runner::run_scenario_file(&scenario, &runner::RunOptions { eps, trace })?;
            print!("{report}");
            Ok(report.outcome.exit_code())
        }
        Command::Verify { suite, seed, cases } => {
            let reports = suites::run_suite(&suite, seed, cases)?;
            let mut ok = true;
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{r}");
                ok &= r.ok();
            }
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Counterexample { name } => {
            let d = counterexample::run(&name)?;
            print!("{}", d.render());
            Ok(if d.reproduced { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Gns { weights, projections } => gns(weights, &projections),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
