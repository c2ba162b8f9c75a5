use rayon::prelude::*;

use crate::cutwidth::{cutwidth_exact_capped, mixing_bound_cutwidth, DEFAULT_CUTWIDTH_CAP};
use crate::error::{Error, Result};
use crate::exact::{transition_matrix_capped, DEFAULT_MATRIX_CAP};
use crate::graph::{Ball, IsingInstance, Spin};
use crate::saw::{spatial_bound_a_u_capped, DEFAULT_NODE_CAP};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalMixingMode {
    /// Exact continuous mixing time of the ball dynamics under every
    /// boundary condition on the sphere.
    Exact,
    /// As `Exact`, but only the all-plus and all-minus boundaries. Heuristic:
    /// the worst boundary is not known to be extremal.
    ExactExtremal,
    /// `80 n^3 e^{5 beta (E + d)}` on the interior of the ball.
    Cutwidth,
}

/// Fixed bounds to test against; `None` means "the worst value observed".
#[derive(Debug, Clone, Copy, Default)]
pub struct ConditionTargets {
    pub volume: Option<f64>,
    pub local_mixing: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub lm_mode: LocalMixingMode,
    pub targets: ConditionTargets,
    /// Evaluate LM even after some vertex failed SM.
    pub full_report: bool,
    pub matrix_cap: usize,
    /// Largest number of free sphere vertices whose boundary conditions are
    /// enumerated.
    pub boundary_cap: usize,
    pub node_cap: usize,
    pub cutwidth_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lm_mode: LocalMixingMode::Exact,
            targets: ConditionTargets::default(),
            full_report: false,
            matrix_cap: DEFAULT_MATRIX_CAP,
            boundary_cap: 12,
            node_cap: DEFAULT_NODE_CAP,
            cutwidth_cap: DEFAULT_CUTWIDTH_CAP,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VertexConditions {
    pub vertex: usize,
    pub volume: usize,
    pub tree_excess: usize,
    pub vol_pass: bool,
    /// Local mixing time (or bound), absent when skipped.
    pub lm_time: Option<f64>,
    pub lm_pass: Option<bool>,
    pub sum_a_u: f64,
    pub sm_pass: bool,
    pub max_copies: usize,
}

impl VertexConditions {
    pub fn passes(&self) -> bool {
        self.vol_pass && self.lm_pass == Some(true) && self.sm_pass
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ConditionReport {
    pub radius: usize,
    pub lm_mode: LocalMixingMode,
    /// `X` tested against.
    pub volume_bound: f64,
    /// `T` tested against.
    pub local_mixing_bound: f64,
    pub per_vertex: Vec<VertexConditions>,
    pub all_pass: bool,
}

pub fn verify_conditions<S: Scalar>(inst: &IsingInstance<S>, radius: usize, opts: &VerifyOptions) -> Result<ConditionReport> {
    if radius == 0 {
        return Err(Error::invalid("radius must be at least 1"));
    }
    let n = inst.n();
    let mut rows: Vec<VertexConditions> = (0..n)
        .into_par_iter()
        .map(|v| -> Result<VertexConditions> {
            let ball = inst.ball(v, radius);
            let sm = spatial_bound_a_u_capped(inst, v, radius, opts.node_cap)?;
            if ball.tree_excess <= 1 && sm.max_copies() > 2 {
                return Err(Error::invalid(format!("vertex {v}: boundary vertex with {} walk copies in a unicyclic ball", sm.max_copies())));
            }
            Ok(VertexConditions {
                vertex: v,
                volume: ball.volume,
                tree_excess: ball.tree_excess,
                vol_pass: true,
                lm_time: None,
                lm_pass: None,
                sum_a_u: sm.total.as_f64(),
                sm_pass: sm.pass,
                max_copies: sm.max_copies(),
            })
        })
        .collect::<Result<_>>()?;

    let max_volume = rows.iter().map(|r| r.volume).max().unwrap_or(0) as f64;
    let volume_bound = opts.targets.volume.unwrap_or(max_volume);
    for r in &mut rows {
        r.vol_pass = r.volume as f64 <= volume_bound;
    }

    let sm_ok = rows.iter().all(|r| r.sm_pass && r.vol_pass);
    if sm_ok || opts.full_report {
        let times: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|v| local_mixing_time(inst, &inst.ball(v, radius), opts))
            .collect::<Result<_>>()?;
        for (r, t) in rows.iter_mut().zip(times) {
            r.lm_time = Some(t);
        }
    }
    let max_lm = rows.iter().filter_map(|r| r.lm_time).fold(0.0, f64::max);
    let local_mixing_bound = opts.targets.local_mixing.unwrap_or(max_lm);
    for r in &mut rows {
        r.lm_pass = r.lm_time.map(|t| t <= local_mixing_bound);
    }
    let all_pass = rows.iter().all(VertexConditions::passes);
    Ok(ConditionReport { radius, lm_mode: opts.lm_mode, volume_bound, local_mixing_bound, per_vertex: rows, all_pass })
}

/// Smallest `R` in `1..=max_radius` at which the influence bound passes at
/// every vertex, or `None`. Once `R` exceeds every eccentricity the spheres
/// are empty and the check passes trivially.
pub fn smallest_spatial_radius<S: Scalar>(inst: &IsingInstance<S>, max_radius: usize, node_cap: usize) -> Result<Option<usize>> {
    for r in 1..=max_radius {
        let pass = (0..inst.n())
            .into_par_iter()
            .map(|v| spatial_bound_a_u_capped(inst, v, r, node_cap).map(|c| c.pass))
            .collect::<Result<Vec<bool>>>()?;
        if pass.iter().all(|&p| p) {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

fn local_mixing_time<S: Scalar>(inst: &IsingInstance<S>, ball: &Ball, opts: &VerifyOptions) -> Result<f64> {
    match opts.lm_mode {
        LocalMixingMode::Cutwidth => {
            let graph = inst.graph().induced(&ball.interior);
            let e = if ball.interior.len() <= opts.cutwidth_cap {
                cutwidth_exact_capped(&graph, opts.cutwidth_cap)?.value
            } else {
                // layer order of the ball, an upper bound on the cut-width
                let mut local = vec![usize::MAX; inst.n()];
                for (i, &u) in ball.interior.iter().enumerate() {
                    local[u] = i;
                }
                let order: Vec<usize> = ball.layers.iter().take(ball.radius).flatten().map(|&u| local[u]).collect();
                graph.ordering_width(&order)
            };
            let beta = inst.beta_max().as_f64();
            Ok(mixing_bound_cutwidth(ball.interior.len(), beta, e, inst.graph().max_degree()))
        }
        LocalMixingMode::Exact | LocalMixingMode::ExactExtremal => {
            let vertices = ball.vertices();
            let sub = inst.restrict(&vertices);
            let sphere: Vec<usize> = ball
                .boundary
                .iter()
                .filter(|&&u| inst.clamp(u).is_none())
                .map(|&u| vertices.binary_search(&u).expect("sphere vertex in ball"))
                .collect();
            if sphere.len() > opts.boundary_cap {
                return Err(Error::SizeCap { what: "free sphere vertices", actual: sphere.len(), cap: opts.boundary_cap });
            }
            let all = (1u64 << sphere.len()) - 1;
            let configs: Vec<u64> =
                if opts.lm_mode == LocalMixingMode::Exact { (0..=all).collect() } else { vec![0, all] };
            let mut worst: f64 = 0.0;
            for bits in configs {
                let pins: Vec<(usize, Spin)> =
                    sphere.iter().enumerate().map(|(i, &u)| (u, Spin::from_bool(bits >> i & 1 == 1))).collect();
                let spectrum = transition_matrix_capped(&sub.pinned(&pins)?, opts.matrix_cap)?;
                worst = worst.max(spectrum.continuous_mixing_time()?);
            }
            Ok(worst)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certified_bound, main_threshold_radius};
    use crate::graph::{complete, cycle};

    #[test]
    fn cycle_passes_at_threshold_radius() {
        let inst = IsingInstance::<f64>::uniform(&cycle(8), 0.3).unwrap();
        let r = main_threshold_radius(2, 0.3).unwrap();
        let rep = verify_conditions(&inst, r, &VerifyOptions::default()).unwrap();
        assert!(rep.all_pass, "{rep:?}");
        assert!(certified_bound(&rep, 8).is_ok());
    }

    #[test]
    fn zero_coupling_sm_is_trivial() {
        let inst = IsingInstance::<f64>::uniform(&cycle(6), 0.0).unwrap();
        let rep = verify_conditions(&inst, 1, &VerifyOptions::default()).unwrap();
        assert!(rep.per_vertex.iter().all(|c| c.sm_pass && c.sum_a_u == 0.0));
    }

    #[test]
    fn strong_clique_is_refused() {
        let inst = IsingInstance::<f64>::uniform(&complete(5), 2.0).unwrap();
        let rep = verify_conditions(&inst, 1, &VerifyOptions::default()).unwrap();
        assert!(rep.per_vertex.iter().all(|c| !c.sm_pass));
        assert!(!rep.all_pass);
        assert!(matches!(certified_bound(&rep, 5), Err(Error::CertificationRefused(_))));
    }
}
