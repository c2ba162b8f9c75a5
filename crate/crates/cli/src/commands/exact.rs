use std::io::Write;

use serde::Serialize;

use glauber::exact::{enumerate_gibbs_capped, transition_matrix_capped, DEFAULT_MATRIX_CAP};

use super::{emit_report, read_instance};
use crate::args::{ExactArgs, GlobalArgs};
use crate::CliResult;

#[derive(Debug, Serialize)]
pub struct ExactReport {
    pub n: usize,
    pub free: Vec<usize>,
    #[serde(rename = "log_Z")]
    pub log_z: f64,
    /// `P(sigma_v = +)` for every vertex.
    pub marginals: Vec<f64>,
    /// Discrete-time absolute spectral gap.
    pub gap: f64,
    pub relaxation_time: f64,
    pub mixing_time: u64,
    pub second_eigenvalue: f64,
    pub continuous_gap: f64,
    pub continuous_relaxation_time: f64,
    pub continuous_mixing_time: f64,
}

#[derive(Debug, Serialize)]
struct MarginalRow {
    vertex: usize,
    marginal_plus: f64,
}

pub(super) fn run(g: &GlobalArgs, a: &ExactArgs, stdout: &mut dyn Write) -> CliResult {
    let inst = read_instance(&a.input)?;
    let cap = g.cap.unwrap_or(DEFAULT_MATRIX_CAP);
    let dist = enumerate_gibbs_capped(&inst, cap)?;
    let spec = transition_matrix_capped(&inst, cap)?;
    let report = ExactReport {
        n: inst.n(),
        free: dist.free.clone(),
        log_z: dist.log_z,
        marginals: dist.marginals(),
        gap: spec.gap,
        relaxation_time: spec.relaxation_time,
        mixing_time: spec.mixing_time()?,
        second_eigenvalue: spec.eigenvalues.get(1).copied().unwrap_or(f64::NAN),
        continuous_gap: spec.continuous_gap(),
        continuous_relaxation_time: spec.continuous_relaxation_time(),
        continuous_mixing_time: spec.continuous_mixing_time()?,
    };
    let rows: Vec<MarginalRow> =
        report.marginals.iter().enumerate().map(|(vertex, &m)| MarginalRow { vertex, marginal_plus: m }).collect();
    emit_report(g, stdout, &report, "exact-marginals v1", &rows)
}
