mod certify;
mod couple;
mod cutwidth;
mod exact;
mod gen;
mod saw;

use std::io::Write;
use std::path::Path;

use glauber::graph::parse_instance;
use glauber::Instance;

use crate::args::{Cli, Command, Format, GlobalArgs, Mode};
use crate::output::{csv_bytes, emit, json_bytes};
use crate::{CliError, CliResult};

pub fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(a) => gen::run(g, a, stdout),
        Command::Exact(a) => exact::run(g, a, stdout),
        Command::Saw(a) => saw::run(g, a, stdout),
        Command::Couple(a) => couple::run_couple(g, a, stdout),
        Command::Scan(a) => couple::run_scan(g, a, stdout),
        Command::Certify(a) => certify::run(g, a, stdout),
        Command::Cutwidth(a) => cutwidth::run(g, a, stdout),
    }
}

pub(crate) fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

pub(crate) fn require_seed(g: &GlobalArgs) -> CliResult<u64> {
    g.seed.ok_or_else(|| CliError::invalid("--seed is required for stochastic commands"))
}

pub(crate) fn time_mode(m: Mode) -> glauber::dynamics::TimeMode {
    match m {
        Mode::Discrete => glauber::dynamics::TimeMode::Discrete,
        Mode::Continuous => glauber::dynamics::TimeMode::Continuous,
    }
}

/// Writes `json` or the CSV `rows` according to `--format`.
pub(crate) fn emit_report<J: serde::Serialize, R: serde::Serialize>(
    g: &GlobalArgs,
    stdout: &mut dyn Write,
    json: &J,
    schema: &str,
    rows: &[R],
) -> CliResult {
    let bytes = match g.format {
        Format::Json => json_bytes(json)?,
        Format::Csv => csv_bytes(schema, rows)?,
    };
    emit(g.out.as_deref(), stdout, &bytes)
}
