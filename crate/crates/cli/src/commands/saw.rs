use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use glauber::exact::{conditional_marginal_capped, DEFAULT_ENUMERATION_CAP};
use glauber::saw::{build_saw_tree, exact_a_u_capped, saw_marginal, spatial_bound_a_u, ExtremalMode};

use super::{emit_report, read_instance};
use crate::args::{GlobalArgs, SawArgs};
use crate::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct BoundaryInfluence {
    pub u: usize,
    /// Walk-sum bound on `a_u`.
    pub a_u: f64,
    pub copies: usize,
    /// Exact influence by enumeration of the ball, with `--exact`.
    pub exact_a_u: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SawVertexReport {
    pub vertex: usize,
    pub marginal_plus: f64,
    /// Enumerated marginal, with `--exact`.
    pub exact_marginal_plus: Option<f64>,
    pub tree_nodes: usize,
    pub cycle_leaves: usize,
    pub radius: Option<usize>,
    pub boundary: Vec<BoundaryInfluence>,
    pub sum_a_u: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct SawRow {
    vertex: usize,
    u: Option<usize>,
    a_u: Option<f64>,
    copies: Option<usize>,
    exact_a_u: Option<f64>,
    marginal_plus: f64,
    sum_a_u: Option<f64>,
    pass: Option<bool>,
}

fn vertex_report(inst: &glauber::Instance, v: usize, a: &SawArgs, cap: usize) -> CliResult<SawVertexReport> {
    let marginal_plus = saw_marginal(inst, v, &[])?;
    let tree = build_saw_tree(inst, v, inst.n().max(1))?;
    let exact_marginal_plus = if a.exact { Some(conditional_marginal_capped(inst, v, &[], cap)?) } else { None };
    let (boundary, sum_a_u, pass) = match a.radius {
        None => (Vec::new(), None, None),
        Some(r) => {
            let cert = spatial_bound_a_u(inst, v, r)?;
            let mut rows = Vec::with_capacity(cert.boundary.len());
            for (i, &u) in cert.boundary.iter().enumerate() {
                let exact = if a.exact {
                    Some(exact_a_u_capped(inst, v, r, u, ExtremalMode::Exhaustive, cap)?)
                } else {
                    None
                };
                rows.push(BoundaryInfluence { u, a_u: cert.a_u[i], copies: cert.copies[i], exact_a_u: exact });
            }
            (rows, Some(cert.total), Some(cert.pass))
        }
    };
    Ok(SawVertexReport {
        vertex: v,
        marginal_plus,
        exact_marginal_plus,
        tree_nodes: tree.len(),
        cycle_leaves: tree.cycle_leaves().len(),
        radius: a.radius,
        boundary,
        sum_a_u,
        pass,
    })
}

pub(super) fn run(g: &GlobalArgs, a: &SawArgs, stdout: &mut dyn Write) -> CliResult {
    let inst = read_instance(&a.input)?;
    let vertices: Vec<usize> = match a.vertex {
        Some(v) if v >= inst.n() => return Err(CliError::invalid(format!("vertex {v} out of range (n = {})", inst.n()))),
        Some(v) => vec![v],
        None => (0..inst.n()).collect(),
    };
    let cap = g.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let reports: Vec<SawVertexReport> =
        vertices.par_iter().map(|&v| vertex_report(&inst, v, a, cap)).collect::<CliResult<_>>()?;
    let mut rows = Vec::new();
    for r in &reports {
        let base = SawRow {
            vertex: r.vertex,
            u: None,
            a_u: None,
            copies: None,
            exact_a_u: None,
            marginal_plus: r.marginal_plus,
            sum_a_u: r.sum_a_u,
            pass: r.pass,
        };
        if r.boundary.is_empty() {
            rows.push(base);
        } else {
            for b in &r.boundary {
                rows.push(SawRow { u: Some(b.u), a_u: Some(b.a_u), copies: Some(b.copies), exact_a_u: b.exact_a_u, ..base });
            }
        }
    }
    emit_report(g, stdout, &reports, "saw-influence v1", &rows)
}
