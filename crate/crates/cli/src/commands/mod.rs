//! Subcommand implementations and the shared error contract.

pub mod coeff;
pub mod heat;
pub mod layer;
pub mod verify;
pub mod walk;

use crate::args::{Cli, Command};
use crate::sink::Sink;

/// Exit code for failed verifications and route mismatches.
pub const EXIT_CHECK_FAILED: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Rejected request: malformed values or domain violations.
    Usage(String),
    /// Environment failure: I/O or serialization.
    Internal(String),
    /// The reader went away; exit quietly like any pipeline tool.
    BrokenPipe,
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Internal(err.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Internal(err.to_string())
    }
}

/// Wrap a domain error from the library as a usage error.
pub fn usage<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Usage(err.to_string())
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let mut sink = Sink::create(cli.output.as_deref())?;
    let code = match &cli.command {
        Command::Coeff(args) => coeff::run(args, &mut sink)?,
        Command::Layer(args) => layer::run(args, cli.format, &mut sink)?,
        Command::Verify(args) => verify::run(args, &mut sink)?,
        Command::Walk(args) => walk::run(args, cli.format, cli.seed, &mut sink)?,
        Command::Heat(args) => heat::run(args, cli.format, &mut sink)?,
    };
    sink.finish()?;
    Ok(code)
}
