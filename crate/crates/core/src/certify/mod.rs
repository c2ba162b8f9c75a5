//! Volume, local-mixing and spatial-mixing checks around every vertex, and
//! the mixing-time and gap bounds they certify.
//!
//! With balls of radius `R`, volume bound `X` and local mixing bound `T`, the
//! continuous-time mixing time is at most `T ceil(ln 8X) (3 + log2 n)` and the
//! gap at least `ln 2 / (T ceil(ln 8X))`.

mod conditions;
mod constants;

pub use conditions::{smallest_spatial_radius, verify_conditions, ConditionReport, ConditionTargets, LocalMixingMode, VerifyOptions, VertexConditions};
pub use constants::{main_threshold_radius, theorem1_constants, threshold_check, Theorem1Constants, MAX_RADIUS};

use crate::dynamics::discrete_from_continuous_bound;
use crate::error::{Error, Result};

#[derive(Debug, Clone, serde::Serialize)]
pub struct CertifiedBound {
    pub radius: usize,
    /// Volume bound `X`.
    pub volume_bound: f64,
    /// Local mixing bound `T` as used (at least 1).
    pub local_mixing_bound: f64,
    /// `ceil(ln 8X)`.
    pub log_factor: f64,
    pub continuous: f64,
    pub gap: f64,
    pub discrete: u64,
}

/// Bounds from `T`, `X` and `n` alone. `T` is raised to 1 if smaller, as the
/// discrete conversion needs `T >= 1` and a larger `T` keeps `LM(R, T)` true.
pub fn certified_bound_from(t: f64, volume: f64, radius: usize, n: usize) -> Result<CertifiedBound> {
    if !(volume >= 1.0) || t.is_nan() {
        return Err(Error::invalid("volume bound must be at least 1"));
    }
    if n == 0 {
        return Err(Error::invalid("empty instance"));
    }
    let t = t.max(1.0);
    let log_factor = (8.0 * volume).ln().ceil();
    let continuous = t * log_factor * (3.0 + (n as f64).log2());
    if !continuous.is_finite() {
        return Err(Error::invalid("certified bound overflows f64"));
    }
    Ok(CertifiedBound {
        radius,
        volume_bound: volume,
        local_mixing_bound: t,
        log_factor,
        continuous,
        gap: std::f64::consts::LN_2 / (t * log_factor),
        discrete: discrete_from_continuous_bound(continuous, n)?,
    })
}

/// Issues the certificate, or refuses if any vertex failed a condition.
pub fn certified_bound(report: &ConditionReport, n: usize) -> Result<CertifiedBound> {
    if !report.all_pass {
        let failing: Vec<String> = report
            .per_vertex
            .iter()
            .filter(|c| !c.passes())
            .take(8)
            .map(|c| {
                let mut what = Vec::new();
                if !c.vol_pass {
                    what.push("Vol");
                }
                if c.lm_pass != Some(true) {
                    what.push("LM");
                }
                if !c.sm_pass {
                    what.push("SM");
                }
                format!("{} ({})", c.vertex, what.join(","))
            })
            .collect();
        return Err(Error::CertificationRefused(format!("conditions fail at vertices {}", failing.join(", "))));
    }
    certified_bound_from(report.local_mixing_bound, report.volume_bound, report.radius, n)
}
