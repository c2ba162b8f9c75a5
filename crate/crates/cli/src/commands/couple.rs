use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use glauber::dynamics::{geometric_checkpoints, grand_coupling_run_with, CouplingOptions, TimeMode, UpdateSchedule};
use glauber::rng::stream;
use glauber::stats::{censored_summary, wilson, Interval, Z95};

use super::{read_instance, require_seed, time_mode};
use crate::args::{CoupleArgs, Format, GlobalArgs, ScanArgs};
use crate::output::{csv_bytes, emit, json_bytes, with_suffix, write_atomic};
use crate::scan::{run_scan as scan, CouplingRow, ScanConfig, ROW_SCHEMA};
use crate::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct CoupleSummary {
    pub schema: &'static str,
    pub n: usize,
    pub mode: TimeMode,
    pub horizon: f64,
    pub replicas: u64,
    pub seed: u64,
    pub censored: usize,
    pub censored_fraction: f64,
    pub censored_fraction_ci: Interval,
    pub median: Option<f64>,
    pub median_lo: Option<f64>,
    pub median_hi: Option<f64>,
    pub checkpoints: Vec<f64>,
    /// Mean of `#{u : X+(u) != X-(u)}` over replicas at each checkpoint.
    pub mean_disagreements: Vec<f64>,
    pub order_violations: u64,
}

/// Sends the primary output (`--format`) to `--out` or stdout; with `--out`
/// the other representation goes to a sibling file.
fn emit_pair<J: Serialize>(g: &GlobalArgs, stdout: &mut dyn Write, summary: &J, rows: &[CouplingRow]) -> CliResult {
    let json = json_bytes(summary)?;
    let csv = csv_bytes(ROW_SCHEMA, rows)?;
    let (primary, secondary, suffix) = match g.format {
        Format::Json => (json, csv, ".rows.csv"),
        Format::Csv => (csv, json, ".summary.json"),
    };
    if let Some(p) = g.out.as_deref() {
        write_atomic(&with_suffix(p, suffix), &secondary)?;
    }
    emit(g.out.as_deref(), stdout, &primary)
}

pub(super) fn run_couple(g: &GlobalArgs, a: &CoupleArgs, stdout: &mut dyn Write) -> CliResult {
    let seed = require_seed(g)?;
    let inst = read_instance(&a.input)?;
    if !(a.horizon > 0.0) {
        return Err(CliError::invalid("--horizon must be positive"));
    }
    if a.replicas == 0 {
        return Err(CliError::invalid("--replicas must be positive"));
    }
    let mode = time_mode(a.mode);
    let checkpoints = match a.checkpoint_first {
        None => Vec::new(),
        Some(first) if first > 0.0 && a.checkpoint_ratio > 1.0 => geometric_checkpoints(first, a.horizon, a.checkpoint_ratio),
        Some(_) => return Err(CliError::invalid("checkpoint grid needs first > 0 and ratio > 1")),
    };
    let schedule = UpdateSchedule::new(mode, a.horizon).with_checkpoints(checkpoints.clone());
    let opts = CouplingOptions { stop_at_coupling: checkpoints.is_empty(), ..Default::default() };
    let traces = (0..a.replicas)
        .into_par_iter()
        .map(|r| grand_coupling_run_with(&inst, &schedule, &opts, &mut stream(seed, "couple", r)))
        .collect::<glauber::Result<Vec<_>>>()?;

    let n = inst.n();
    let d = inst.graph().max_degree() as f64;
    let rows: Vec<CouplingRow> = traces
        .iter()
        .enumerate()
        .map(|(r, t)| CouplingRow {
            seed,
            replica: r as u64,
            n,
            beta: inst.beta_max(),
            d,
            mode,
            coupling_time: t.coupling_time.unwrap_or(a.horizon),
            censored_flag: u8::from(t.censored()),
        })
        .collect();
    let observed: Vec<f64> = traces.iter().filter_map(|t| t.coupling_time).collect();
    let censored = traces.len() - observed.len();
    let s = censored_summary(&observed, censored);
    let mean_disagreements = (0..checkpoints.len())
        .map(|i| traces.iter().map(|t| t.disagreements[i] as f64).sum::<f64>() / traces.len() as f64)
        .collect();
    let summary = CoupleSummary {
        schema: "couple-summary v1",
        n,
        mode,
        horizon: a.horizon,
        replicas: a.replicas,
        seed,
        censored,
        censored_fraction: s.censored_fraction,
        censored_fraction_ci: wilson(censored as u64, a.replicas, Z95),
        median: s.median,
        median_lo: s.median_lo,
        median_hi: s.median_hi,
        checkpoints,
        mean_disagreements,
        order_violations: traces.iter().map(|t| t.order_violations).sum(),
    };
    emit_pair(g, stdout, &summary, &rows)
}

pub(super) fn run_scan(g: &GlobalArgs, a: &ScanArgs, stdout: &mut dyn Write) -> CliResult {
    let cfg = ScanConfig {
        family: a.family,
        ns: a.n.clone(),
        d: a.d,
        betas: a.beta.clone(),
        ratios: a.ratio.clone(),
        field: a.field,
        replicas: a.replicas,
        horizon: a.horizon,
        mode: time_mode(a.mode),
        seed: require_seed(g)?,
    };
    let out = scan(&cfg)?;
    emit_pair(g, stdout, &out.summary, &out.rows)
}
