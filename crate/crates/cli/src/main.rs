//! Command-line front end over the `pascube` library.
//!
//! Exit codes: 0 success / all checks pass, 2 verification failure,
//! 64 usage error, 70 internal error.

mod args;
mod commands;
mod sink;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::CliError;

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            // clap routes help and version to stdout, true errors to stderr.
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
    }
}
