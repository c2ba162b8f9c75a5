use std::io::Write;

use serde::Serialize;

use glauber::certify::{
    certified_bound, smallest_spatial_radius, theorem1_constants, verify_conditions, ConditionTargets, LocalMixingMode,
    Theorem1Constants, VerifyOptions,
};
use glauber::exact::DEFAULT_MATRIX_CAP;

use super::{emit_report, read_instance};
use crate::args::{CertifyArgs, GlobalArgs, LmArg};
use crate::{CliError, CliResult, EXIT_REFUSED};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VertexRow {
    pub v: usize,
    /// `|B(v, R)|`.
    pub vol: usize,
    pub vol_pass: bool,
    pub tree_excess: usize,
    /// Local mixing time (or bound) of the ball; absent if not evaluated.
    pub lm: Option<f64>,
    pub lm_pass: Option<bool>,
    pub sm: bool,
    pub sum_a_u: f64,
    pub max_copies: usize,
}

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub status: &'static str,
    #[serde(rename = "R")]
    pub radius: usize,
    pub lm_mode: LocalMixingMode,
    #[serde(rename = "X")]
    pub volume_bound: f64,
    #[serde(rename = "T")]
    pub local_mixing_bound: f64,
    pub theorem1: Option<Theorem1Constants>,
    pub per_vertex: Vec<VertexRow>,
    pub certified_continuous: Option<f64>,
    pub certified_gap: Option<f64>,
    pub certified_discrete: Option<u64>,
    pub reason: Option<String>,
}

fn parse_radius(s: &str) -> CliResult<Option<usize>> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(None);
    }
    match s.parse::<usize>() {
        Ok(r) if r >= 1 => Ok(Some(r)),
        _ => Err(CliError::invalid(format!("--R expects a positive integer or 'auto', got '{s}'"))),
    }
}

pub(super) fn run(g: &GlobalArgs, a: &CertifyArgs, stdout: &mut dyn Write) -> CliResult {
    let inst = read_instance(&a.input)?;
    let n = inst.n();
    let mut opts = VerifyOptions {
        lm_mode: match a.lm {
            LmArg::Exact => LocalMixingMode::Exact,
            LmArg::Extremal => LocalMixingMode::ExactExtremal,
            LmArg::Cutwidth => LocalMixingMode::Cutwidth,
        },
        full_report: a.full_report,
        matrix_cap: g.cap.unwrap_or(DEFAULT_MATRIX_CAP),
        ..VerifyOptions::default()
    };
    let requested = parse_radius(&a.radius)?;
    let theorem1 = if a.theorem1 {
        let c = theorem1_constants(inst.graph().max_degree(), inst.beta_max())?;
        opts.targets = ConditionTargets { volume: Some(c.volume), local_mixing: Some(c.local_mixing) };
        Some(c)
    } else {
        None
    };
    let radius = match (requested, &theorem1) {
        (Some(r), _) => r,
        (None, Some(c)) => c.radius,
        (None, None) => match smallest_spatial_radius(&inst, n.max(1) + 1, opts.node_cap)? {
            Some(r) => r,
            None => return Err(CliError { code: EXIT_REFUSED, message: "no radius satisfies the influence bound".into() }),
        },
    };
    let report = verify_conditions(&inst, radius, &opts)?;
    let per_vertex = report
        .per_vertex
        .iter()
        .map(|c| VertexRow {
            v: c.vertex,
            vol: c.volume,
            vol_pass: c.vol_pass,
            tree_excess: c.tree_excess,
            lm: c.lm_time,
            lm_pass: c.lm_pass,
            sm: c.sm_pass,
            sum_a_u: c.sum_a_u,
            max_copies: c.max_copies,
        })
        .collect::<Vec<_>>();
    let bound = certified_bound(&report, n);
    let refusal = bound.as_ref().err().map(ToString::to_string);
    let out = CertifyReport {
        status: if bound.is_ok() { "certified" } else { "refused" },
        radius,
        lm_mode: report.lm_mode,
        volume_bound: report.volume_bound,
        local_mixing_bound: bound.as_ref().map(|b| b.local_mixing_bound).unwrap_or(report.local_mixing_bound),
        theorem1,
        certified_continuous: bound.as_ref().ok().map(|b| b.continuous),
        certified_gap: bound.as_ref().ok().map(|b| b.gap),
        certified_discrete: bound.as_ref().ok().map(|b| b.discrete),
        reason: refusal.clone(),
        per_vertex,
    };
    emit_report(g, stdout, &out, "certify-vertices v1", &out.per_vertex)?;
    match bound {
        Ok(_) => Ok(()),
        Err(e) => Err(e.into()),
    }
}
