//! Command-line harness: argument parsing, command dispatch and table output.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io;
use std::path::PathBuf;

pub use args::{parse_args, CommandKind, Format, RunConfig};
pub use output::{emit, emit_to, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SIMULATION: i32 = 4;

/// Environment variable naming the directory used when `--out` is absent.
pub const OUT_DIR_ENV: &str = "RENDEZVOUS_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("simulation failed: {0}")]
    Simulation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Simulation(_) => EXIT_SIMULATION,
        }
    }
}

impl From<rendezvous_core::Error> for CliError {
    fn from(e: rendezvous_core::Error) -> Self {
        match e {
            rendezvous_core::Error::InvalidParameter(m) | rendezvous_core::Error::Density(m) => CliError::Usage(m),
            other => CliError::Simulation(other.to_string()),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|cfg| commands::execute(&cfg));
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
