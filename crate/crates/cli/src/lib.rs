//! Command-line front end for `psd-approx`: Matrix Market I/O, the
//! subcommands, and their JSON/CSV reports.
//!
//! Exit codes: `0` success, `1` I/O failure, `2` invalid input or usage,
//! `3` numerical failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod compare;
pub mod error;
pub mod mm;
pub mod report;

use args::{Cli, Command};
pub use error::CliError;

/// Parses `argv` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Approx(a) => commands::approx(a, stdout, stderr),
        Command::Decompose(a) => commands::decompose_cmd(a, stdout),
        Command::Certify(a) => commands::certify(a, stdout),
        Command::Generate(a) => commands::generate_cmd(a, stdout),
        Command::Compare(a) => compare::compare_cmd(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
