// SPDX-License-Identifier: Apache-2.0

//! `scx`: command-line experiments for the weak/strong coupling laboratory.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod svg;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{load_model_config, parse_model_config};
pub use error::CliError;
pub use table::{emit_table, ColumnKind, OutputFormat, ResultTable, Value};

use cli::{Cli, Command, Demo};

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Demo(Demo::Geometric(a)) => commands::geometric(a),
        Command::Demo(Demo::Recursion(a)) => commands::recursion(a),
        Command::Propagate(a) => commands::propagate(a),
        Command::Strong(a) => commands::strong(a),
        Command::Mvt(a) => commands::mvt(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

/// Runs one command line, writing the summary to `out` and errors to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(summary) => {
            let _ = writeln!(out, "{summary}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
