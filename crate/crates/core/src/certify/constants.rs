use crate::error::{Error, Result};

/// Largest radius the scan will try.
pub const MAX_RADIUS: usize = 1_000_000;

/// `(d - 1) tanh(beta) < 1`.
pub fn threshold_check(d: usize, beta: f64) -> bool {
    (d as f64 - 1.0) * beta.tanh() < 1.0
}

/// Smallest `R >= 1` with `d (d-1)^{R-1} tanh^R(beta) / (1 - (d-1) tanh beta) <= 1/4`.
pub fn main_threshold_radius(d: usize, beta: f64) -> Result<usize> {
    if d < 1 || beta.is_nan() || beta < 0.0 {
        return Err(Error::invalid(format!("need d >= 1 and beta >= 0 (d = {d}, beta = {beta})")));
    }
    if !threshold_check(d, beta) {
        return Err(Error::invalid(format!("(d-1) tanh(beta) = {} is not below 1", (d as f64 - 1.0) * beta.tanh())));
    }
    let t = beta.tanh();
    if t == 0.0 {
        return Ok(1);
    }
    if d == 1 {
        // a single neighbor and nothing beyond it
        return Ok(if t <= 0.25 { 1 } else { 2 });
    }
    let df = d as f64;
    let base = df.ln() - (1.0 - (df - 1.0) * t).ln() - 0.25f64.ln();
    // base + (R-1) ln(d-1) + R ln t <= 0, up to rounding
    (1..=MAX_RADIUS)
        .find(|&r| base + (r as f64 - 1.0) * (df - 1.0).ln() + r as f64 * t.ln() <= 1e-12)
        .ok_or_else(|| Error::invalid("radius scan exceeded its limit"))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Theorem1Constants {
    pub d: usize,
    pub beta: f64,
    pub radius: usize,
    /// `X = 1 + d sum_{l=1}^R (d-1)^{l-1}`.
    pub volume: f64,
    /// `ln T` with `T = 80 d^3 X^3 e^{5 beta d (X + 1)}`.
    pub ln_local_mixing: f64,
    /// `T`, infinite if it overflows `f64`.
    pub local_mixing: f64,
}

pub fn theorem1_constants(d: usize, beta: f64) -> Result<Theorem1Constants> {
    let radius = main_threshold_radius(d, beta)?;
    let df = d as f64;
    let volume = 1.0 + df * (0..radius).map(|l| (df - 1.0).powi(l as i32)).sum::<f64>();
    let ln_t = 80f64.ln() + 3.0 * df.ln() + 3.0 * volume.ln() + 5.0 * beta * df * (volume + 1.0);
    Ok(Theorem1Constants { d, beta, radius, volume, ln_local_mixing: ln_t, local_mixing: ln_t.exp() })
}
