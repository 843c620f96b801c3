//! `kfwer` command-line tool.
//!
//! Exit codes: 0 success, 1 verification counterexample, 2 bad input data,
//! 3 bad flags or configuration.

mod error;
mod input;
mod procedure;
mod simulate;
mod test_cmd;
mod verify_cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "kfwer",
    version,
    about = "Multiple testing with generalized familywise error control"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a procedure to a list of p-values and print a JSON report
    Test(test_cmd::TestArgs),
    /// Estimate the k-FWER and power of a procedure by Monte Carlo
    Simulate(simulate::SimulateArgs),
    /// Randomized checks of the equivalence and dominance relations
    Verify(verify_cmd::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Test(args) => test_cmd::run(args).map(|()| true),
        Command::Simulate(args) => simulate::run(args).map(|()| true),
        Command::Verify(args) => verify_cmd::run(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
