//! Command-line harness around the `glauber` crate.
//!
//! [`run`] takes an argument vector and a writer for standard output, so the
//! same code path serves the binary and the tests. Stochastic commands draw
//! all randomness from streams keyed by `--seed`, the command and the replica
//! index, and collect results in replica order, so outputs do not depend on
//! `--threads`.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod scan;

use std::fmt;
use std::io::Write;

use clap::Parser;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<glauber::Error> for CliError {
    fn from(e: glauber::Error) -> Self {
        let code = match &e {
            glauber::Error::CertificationRefused(_) => EXIT_REFUSED,
            e if e.is_size_cap() => EXIT_SIZE_CAP,
            _ => EXIT_INVALID,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Parses `argv` (including the program name), merges the config file and
/// runs the command.
pub fn run(argv: Vec<String>, stdout: &mut dyn Write) -> CliResult {
    let argv = config::merge_config(argv)?;
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::invalid(e.to_string())),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return Err(CliError::invalid("--threads must be positive"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::invalid(e.to_string()))?;
    let mut buf = Vec::new();
    let result = pool.install(|| commands::dispatch(&cli, &mut buf));
    stdout.write_all(&buf)?;
    result
}
