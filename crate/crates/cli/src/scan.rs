//! Coupling-time scans over `(n, beta)` grids.

use rayon::prelude::*;
use serde::Serialize;

use glauber::dynamics::{grand_coupling_run_with, CouplingOptions, TimeMode, UpdateSchedule};
use glauber::graph::{complete, cycle, gen_erdos_renyi, gen_random_regular, grid, path, star, Graph, IsingInstance};
use glauber::rng::{derive_seed, stream};
use glauber::stats::{censored_summary, linear_fit, wilson, Interval, LinearFit, Z95};

use crate::args::Family;
use crate::{CliError, CliResult};

pub const ROW_SCHEMA: &str = "coupling-rows v1";
pub const SUMMARY_SCHEMA: &str = "scan-summary v1";

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub family: Family,
    pub ns: Vec<usize>,
    pub d: Option<f64>,
    pub betas: Vec<f64>,
    /// Values of `(d-1) tanh(beta)` to convert into betas instead.
    pub ratios: Vec<f64>,
    pub field: f64,
    pub replicas: u64,
    pub horizon: f64,
    pub mode: TimeMode,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CouplingRow {
    pub seed: u64,
    pub replica: u64,
    pub n: usize,
    pub beta: f64,
    pub d: f64,
    pub mode: TimeMode,
    /// Coupling time, or the horizon for censored runs.
    pub coupling_time: f64,
    pub censored_flag: u8,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanPoint {
    pub n: usize,
    pub beta: f64,
    pub ratio: Option<f64>,
    pub replicas: usize,
    pub censored: usize,
    pub censored_fraction: f64,
    /// Wilson interval for the censored fraction.
    pub censored_fraction_ci: Interval,
    /// `None` when the median falls on a censored replica.
    pub median: Option<f64>,
    pub median_lo: Option<f64>,
    pub median_hi: Option<f64>,
    pub median_over_n_ln_n: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BetaFits {
    pub beta: f64,
    pub ratio: Option<f64>,
    /// `ln(time)` against `n`, one point per replica, censored at the horizon.
    pub log_time_vs_n: Option<LinearFit>,
    /// `ln(time)` against `ln n`, same points.
    pub log_time_vs_log_n: Option<LinearFit>,
    /// `max/min - 1` of `median / (n ln n)` across the `n` grid.
    pub ratio_variation: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub schema: &'static str,
    pub family: String,
    pub d: f64,
    pub mode: TimeMode,
    pub horizon: f64,
    pub replicas: u64,
    pub seed: u64,
    pub points: Vec<ScanPoint>,
    pub fits: Vec<BetaFits>,
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub rows: Vec<CouplingRow>,
    pub summary: ScanSummary,
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Er => "er",
        Family::Regular => "regular",
        Family::Gw => "gw",
        Family::Cycle => "cycle",
        Family::Path => "path",
        Family::Star => "star",
        Family::Grid => "grid",
        Family::Complete => "complete",
        Family::File => "file",
    }
}

fn family_degree(cfg: &ScanConfig) -> CliResult<f64> {
    if let Some(d) = cfg.d {
        return Ok(d);
    }
    match cfg.family {
        Family::Cycle | Family::Path => Ok(2.0),
        Family::Grid => Ok(4.0),
        _ => Err(CliError::invalid("--d is required for this family")),
    }
}

fn side(n: usize) -> CliResult<usize> {
    let s = (n as f64).sqrt().round() as usize;
    if s * s != n {
        return Err(CliError::invalid(format!("grid scans need square n, got {n}")));
    }
    Ok(s)
}

/// Graph for replica `replica` at size `n`; random families get a fresh
/// graph per replica, shared across the beta grid.
fn scan_graph(cfg: &ScanConfig, n: usize, replica: u64) -> CliResult<Graph> {
    let gseed = derive_seed(cfg.seed, "scan-graph", (n as u64) << 32 | replica);
    Ok(match cfg.family {
        Family::Cycle => cycle(n),
        Family::Path => path(n),
        Family::Star => star(n.saturating_sub(1)),
        Family::Complete => complete(n),
        Family::Grid => {
            let s = side(n)?;
            grid(s, s)
        }
        Family::Regular => {
            let d = cfg.d.ok_or_else(|| CliError::invalid("--d is required for regular graphs"))?;
            if d.fract() != 0.0 || d < 0.0 {
                return Err(CliError::invalid("regular degree must be a non-negative integer"));
            }
            gen_random_regular(n, d as usize, gseed)?
        }
        Family::Er => gen_erdos_renyi(n, cfg.d.ok_or_else(|| CliError::invalid("--d is required for er graphs"))?, gseed)?,
        Family::Gw | Family::File => return Err(CliError::invalid("scan supports cycle, path, star, grid, complete, regular, er")),
    })
}

pub fn betas_of(cfg: &ScanConfig) -> CliResult<Vec<(f64, Option<f64>)>> {
    if !cfg.ratios.is_empty() {
        let d = family_degree(cfg)?;
        return cfg
            .ratios
            .iter()
            .map(|&r| {
                let t = r / (d - 1.0);
                if !(0.0..1.0).contains(&t) {
                    return Err(CliError::invalid(format!("ratio {r} gives tanh(beta) = {t}, outside [0, 1)")));
                }
                Ok((t.atanh(), Some(r)))
            })
            .collect();
    }
    if cfg.betas.is_empty() {
        return Err(CliError::invalid("give --beta or --ratio"));
    }
    Ok(cfg.betas.iter().map(|&b| (b, None)).collect())
}

pub fn run_scan(cfg: &ScanConfig) -> CliResult<ScanOutput> {
    if cfg.ns.is_empty() {
        return Err(CliError::invalid("empty n grid"));
    }
    if !(cfg.horizon > 0.0) {
        return Err(CliError::invalid("horizon cap must be positive"));
    }
    if cfg.replicas == 0 {
        return Err(CliError::invalid("need at least one replica"));
    }
    let betas = betas_of(cfg)?;
    if let Some(&(b, _)) = betas.iter().find(|(b, _)| !(*b >= 0.0)) {
        return Err(CliError::invalid(format!("beta must be non-negative, got {b}")));
    }
    let d = family_degree(cfg).unwrap_or(f64::NAN);
    let jobs: Vec<(usize, usize, u64)> = (0..cfg.ns.len())
        .flat_map(|ni| (0..betas.len()).flat_map(move |bi| (0..cfg.replicas).map(move |r| (ni, bi, r))))
        .collect();
    let rows: Vec<CouplingRow> = jobs
        .par_iter()
        .map(|&(ni, bi, r)| -> CliResult<CouplingRow> {
            let n = cfg.ns[ni];
            let beta = betas[bi].0;
            let g = scan_graph(cfg, n, r)?;
            let fields: Vec<(usize, glauber::Field<f64>)> = if cfg.field != 0.0 {
                (0..n).map(|v| (v, glauber::Field::Finite(cfg.field))).collect()
            } else {
                Vec::new()
            };
            let edges: Vec<(usize, usize, f64)> = g.edges().map(|(u, v)| (u, v, beta)).collect();
            let inst = IsingInstance::build(n, &edges, &fields)?;
            let schedule = UpdateSchedule::new(cfg.mode, cfg.horizon);
            let mut rng = stream(cfg.seed, &format!("scan/{n}/{bi}"), r);
            let t = grand_coupling_run_with(&inst, &schedule, &CouplingOptions::default(), &mut rng)?;
            Ok(CouplingRow {
                seed: cfg.seed,
                replica: r,
                n,
                beta,
                d,
                mode: cfg.mode,
                coupling_time: t.coupling_time.unwrap_or(cfg.horizon),
                censored_flag: u8::from(t.censored()),
            })
        })
        .collect::<CliResult<_>>()?;

    let per = cfg.replicas as usize;
    let mut points = Vec::new();
    let mut fits = Vec::new();
    for (bi, &(beta, ratio)) in betas.iter().enumerate() {
        let (mut xs, mut lxs, mut ys) = (Vec::new(), Vec::new(), Vec::new());
        let mut ratios_nlogn = Vec::new();
        for (ni, &n) in cfg.ns.iter().enumerate() {
            let start = (ni * betas.len() + bi) * per;
            let chunk = &rows[start..start + per];
            let observed: Vec<f64> = chunk.iter().filter(|r| r.censored_flag == 0).map(|r| r.coupling_time).collect();
            let censored = per - observed.len();
            let s = censored_summary(&observed, censored);
            let nlogn = n as f64 * (n as f64).ln();
            let over = s.median.filter(|_| n > 1).map(|m| m / nlogn);
            ratios_nlogn.push(over);
            for r in chunk {
                xs.push(n as f64);
                lxs.push((n as f64).ln());
                ys.push(r.coupling_time.max(1e-300).ln());
            }
            points.push(ScanPoint {
                n,
                beta,
                ratio,
                replicas: per,
                censored,
                censored_fraction: s.censored_fraction,
                censored_fraction_ci: wilson(censored as u64, per as u64, Z95),
                median: s.median,
                median_lo: s.median_lo,
                median_hi: s.median_hi,
                median_over_n_ln_n: over,
            });
        }
        let ratio_variation = if ratios_nlogn.len() >= 2 && ratios_nlogn.iter().all(Option::is_some) {
            let v: Vec<f64> = ratios_nlogn.iter().map(|x| x.unwrap()).collect();
            let (lo, hi) = v.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
            Some(hi / lo - 1.0)
        } else {
            None
        };
        fits.push(BetaFits {
            beta,
            ratio,
            log_time_vs_n: linear_fit(&xs, &ys),
            log_time_vs_log_n: linear_fit(&lxs, &ys),
            ratio_variation,
        });
    }
    Ok(ScanOutput {
        rows,
        summary: ScanSummary {
            schema: SUMMARY_SCHEMA,
            family: family_name(cfg.family).to_string(),
            d,
            mode: cfg.mode,
            horizon: cfg.horizon,
            replicas: cfg.replicas,
            seed: cfg.seed,
            points,
            fits,
        },
    })
}
