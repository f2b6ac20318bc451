//! File formats and the `qcx` command line for `qcx-core`.
//!
//! Every command prints a [`report::RunReport`] as JSON and exits with 0 when
//! all checks pass, 1 when one fails and 2 on bad input.

pub mod cli;
pub mod commands;
pub mod grid;
pub mod input;
pub mod report;

use std::io::Write as _;

use cli::{Cli, Command};
use report::RunReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
}

pub fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Check3pc(a) => commands::check3pc(a),
        Command::Split(a) => commands::split(a),
        Command::ExtendAuto(a) => commands::extend_auto(a),
        Command::ExtendEmbed(a) => commands::extend_embed(a),
        Command::Explattice(a) => commands::explattice(a),
        Command::Eval(a) => commands::eval(a),
        Command::Grid(a) => commands::grid(a),
        Command::Report(a) => commands::batch(a),
    }
}

/// Runs a parsed command, prints its report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(r) => {
            let json = serde_json::to_string_pretty(&r).expect("serializable");
            // a closed pipe is the reader's choice, not a failure of the run
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            if r.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
