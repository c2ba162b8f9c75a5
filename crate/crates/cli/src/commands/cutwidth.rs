use std::io::Write;

use serde::Serialize;

use glauber::cutwidth::{
    calibrate_gw_shift, calibrate_order_stat_shift, cutwidth_exact_capped, gw_cutwidth_stats, ln_mixing_bound_cutwidth,
    ln_relaxation_bound, order_stat_bound_sample, poisson_domination, tree_cutwidth_ordering_graph, CutwidthKind,
    DominationCheck, DEFAULT_CUTWIDTH_CAP,
};
use glauber::rng::derive_seed;
use glauber::stats::{linear_fit, LinearFit};

use super::{emit_report, read_instance, require_seed};
use crate::args::{CutwidthArgs, GlobalArgs};
use crate::{CliError, CliResult};

/// Largest shift tried when calibrating tail offsets.
const MAX_SHIFT: u32 = 256;

#[derive(Debug, Serialize)]
pub struct GraphCutwidth {
    pub n: usize,
    pub m: usize,
    pub value: usize,
    pub kind: CutwidthKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    /// Natural logs of the cut-width relaxation and mixing bounds at the
    /// instance's largest coupling and degree.
    pub ln_relaxation_bound: f64,
    pub ln_mixing_bound: f64,
}

#[derive(Debug, Serialize)]
struct OrderRow {
    position: usize,
    vertex: usize,
}

#[derive(Debug, Serialize)]
pub struct GwDepth {
    pub depth: usize,
    pub mean: f64,
    pub quantiles: [u32; 3],
    pub mean_size: f64,
    /// Samples small enough for the exact solver, and how many of them the
    /// tree bound matched.
    pub exact_samples: usize,
    pub bound_tight: usize,
    pub domination: Option<DominationCheck>,
}

#[derive(Debug, Serialize)]
pub struct GwReport {
    pub d: f64,
    pub samples: usize,
    pub seed: u64,
    pub depths: Vec<GwDepth>,
    /// Smallest integer `C'` with `P(E >= C' l + q) <= P(Po(d) >= q) + 2 CI`
    /// at every depth.
    pub shift: Option<u32>,
    pub mean_fit: Option<LinearFit>,
}

#[derive(Debug, Serialize)]
struct GwRow {
    depth: usize,
    sample: usize,
    size: usize,
    bound: u32,
    exact: Option<u32>,
}

#[derive(Debug, Serialize)]
pub struct OrderStatReport {
    pub d: f64,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub shift: Option<u32>,
    pub domination: Option<DominationCheck>,
}

#[derive(Debug, Serialize)]
struct OrderStatRow {
    sample: usize,
    w: u32,
}

fn count(x: f64, what: &str) -> CliResult<usize> {
    if x < 0.0 || x.fract() != 0.0 {
        return Err(CliError::invalid(format!("{what} must be a non-negative integer, got {x}")));
    }
    Ok(x as usize)
}

fn graph_mode(g: &GlobalArgs, a: &CutwidthArgs, stdout: &mut dyn Write) -> CliResult {
    let path = a.input.as_deref().ok_or_else(|| CliError::invalid("--in is required with --exact or --tree-bound"))?;
    let inst = read_instance(path)?;
    let graph = inst.graph();
    let res = if a.exact {
        cutwidth_exact_capped(graph, g.cap.unwrap_or(DEFAULT_CUTWIDTH_CAP))?
    } else {
        tree_cutwidth_ordering_graph(graph)?
    };
    let d = graph.max_degree();
    let beta = inst.beta_max();
    let rows: Vec<OrderRow> = res.ordering.iter().enumerate().map(|(position, &vertex)| OrderRow { position, vertex }).collect();
    let report = GraphCutwidth {
        n: graph.n(),
        m: graph.m(),
        value: res.value,
        kind: res.kind,
        ordering: a.with_ordering.then(|| res.ordering.clone()),
        ln_relaxation_bound: ln_relaxation_bound(graph.n(), beta, res.value, d),
        ln_mixing_bound: ln_mixing_bound_cutwidth(graph.n(), beta, res.value, d),
    };
    let rows: &[OrderRow] = if a.with_ordering { &rows } else { &[] };
    emit_report(g, stdout, &report, "cutwidth-ordering v1", rows)
}

fn gw_mode(g: &GlobalArgs, a: &CutwidthArgs, spec: &[f64], stdout: &mut dyn Write) -> CliResult {
    let seed = require_seed(g)?;
    let d = spec[0];
    let depth = count(spec[1], "depth")?;
    let samples = count(spec[2], "samples")?;
    let depths: Vec<usize> = if a.sweep { (1..=depth).collect() } else { vec![depth] };
    let mut per_depth = Vec::new();
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for &l in &depths {
        let s = gw_cutwidth_stats(d, l, samples, derive_seed(seed, "gw-depth", l as u64), a.exact_cap)?;
        for i in 0..samples {
            rows.push(GwRow { depth: l, sample: i, size: s.sizes[i], bound: s.bounds[i], exact: s.exact[i] });
        }
        let exact: Vec<(u32, u32)> = s.bounds.iter().zip(&s.exact).filter_map(|(&b, e)| e.map(|e| (b, e))).collect();
        out.push(GwDepth {
            depth: l,
            mean: s.mean,
            quantiles: s.quantiles,
            mean_size: s.sizes.iter().sum::<usize>() as f64 / samples as f64,
            exact_samples: exact.len(),
            bound_tight: exact.iter().filter(|(b, e)| b == e).count(),
            domination: None,
        });
        per_depth.push((l, s.bounds));
    }
    let shift = if depths.iter().all(|&l| l > 0) { calibrate_gw_shift(d, &per_depth, MAX_SHIFT) } else { None };
    if let Some(c) = shift {
        for (row, (l, s)) in out.iter_mut().zip(&per_depth) {
            row.domination = Some(poisson_domination(s, c * *l as u32, d));
        }
    }
    let xs: Vec<f64> = out.iter().map(|r| r.depth as f64).collect();
    let ys: Vec<f64> = out.iter().map(|r| r.mean).collect();
    let report = GwReport { d, samples, seed, depths: out, shift, mean_fit: linear_fit(&xs, &ys) };
    emit_report(g, stdout, &report, "gw-cutwidth v1", &rows)
}

fn order_stat_mode(g: &GlobalArgs, spec: &[f64], stdout: &mut dyn Write) -> CliResult {
    let seed = require_seed(g)?;
    let d = spec[0];
    let samples = count(spec[1], "samples")?;
    if samples == 0 {
        return Err(CliError::invalid("need at least one sample"));
    }
    let ws = order_stat_bound_sample(d, samples, seed)?;
    let shift = calibrate_order_stat_shift(d, &ws, MAX_SHIFT);
    let report = OrderStatReport {
        d,
        samples,
        seed,
        mean: ws.iter().map(|&w| w as f64).sum::<f64>() / samples as f64,
        shift,
        domination: shift.map(|c| poisson_domination(&ws, c, d)),
    };
    let rows: Vec<OrderStatRow> = ws.iter().enumerate().map(|(sample, &w)| OrderStatRow { sample, w }).collect();
    emit_report(g, stdout, &report, "order-stat v1", &rows)
}

pub(super) fn run(g: &GlobalArgs, a: &CutwidthArgs, stdout: &mut dyn Write) -> CliResult {
    if let Some(spec) = &a.gw {
        return gw_mode(g, a, spec, stdout);
    }
    if let Some(spec) = &a.order_stat {
        return order_stat_mode(g, spec, stdout);
    }
    if a.exact || a.tree_bound {
        return graph_mode(g, a, stdout);
    }
    Err(CliError::invalid("choose one of --exact, --tree-bound, --gw, --order-stat"))
}
