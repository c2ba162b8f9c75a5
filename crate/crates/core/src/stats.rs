//! Small statistics toolkit used by the experiments: Wilson intervals,
//! censored medians, least-squares fits and Poisson tails.

use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }
}

/// Wilson score interval for `successes / trials` at normal quantile `z`.
pub fn wilson(successes: u64, trials: u64, z: f64) -> Interval {
    if trials == 0 {
        return Interval { estimate: f64::NAN, lo: 0.0, hi: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    Interval { estimate: p, lo, hi }
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// A sample where some observations are only known to exceed a cap.
///
/// Censored observations sort above every observed value; any order
/// statistic landing on one of them is reported as `None` instead of being
/// replaced by the cap.
#[derive(Debug, Clone, Serialize)]
pub struct CensoredSummary {
    pub total: usize,
    pub censored: usize,
    pub censored_fraction: f64,
    pub median: Option<f64>,
    pub median_lo: Option<f64>,
    pub median_hi: Option<f64>,
}

pub fn censored_summary(observed: &[f64], censored: usize) -> CensoredSummary {
    let mut sorted = observed.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let total = sorted.len() + censored;
    let at = |k: usize| -> Option<f64> { sorted.get(k).copied() };
    let (median, lo, hi) = if total == 0 {
        (None, None, None)
    } else {
        let median = if total % 2 == 1 {
            at(total / 2)
        } else {
            match (at(total / 2 - 1), at(total / 2)) {
                (Some(a), Some(b)) => Some((a + b) / 2.0),
                _ => None,
            }
        };
        // distribution-free order-statistic interval for the median
        let n = total as f64;
        let spread = Z95 * n.sqrt() / 2.0;
        let lo_idx = ((n / 2.0 - spread).floor().max(0.0)) as usize;
        let hi_idx = ((n / 2.0 + spread).ceil() as usize).min(total - 1);
        (median, at(lo_idx), at(hi_idx))
    };
    CensoredSummary {
        total,
        censored,
        censored_fraction: if total == 0 { 0.0 } else { censored as f64 / total as f64 },
        median,
        median_lo: lo,
        median_hi: hi,
    }
}

/// Ordinary least squares `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub slope_lo: f64,
    pub slope_hi: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Two-sided 97.5% Student-t quantile for small degrees of freedom.
pub fn t975(df: usize) -> f64 {
    const TABLE: [f64; 30] = [
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160,
        2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
        2.052, 2.048, 2.045, 2.042,
    ];
    match df {
        0 => f64::INFINITY,
        1..=30 => TABLE[df - 1],
        _ => Z95,
    }
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = mean(xs);
    let my = mean(ys);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_se = if n > 2 { (sse / (n - 2) as f64 / sxx).sqrt() } else { f64::INFINITY };
    let t = t975(n.saturating_sub(2));
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Some(LinearFit {
        slope,
        intercept,
        slope_se,
        slope_lo: slope - t * slope_se,
        slope_hi: slope + t * slope_se,
        r_squared,
        points: n,
    })
}

/// `ln P(Po(d) = k)`.
pub fn poisson_ln_pmf(d: f64, k: u64) -> f64 {
    let kf = k as f64;
    kf * d.ln() - d - ln_factorial(k)
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `P(Po(d) >= q)`.
pub fn poisson_upper_tail(d: f64, q: u64) -> f64 {
    if q == 0 {
        return 1.0;
    }
    let below: f64 = (0..q).map(|k| poisson_ln_pmf(d, k).exp()).sum();
    // the complement loses precision deep in the tail; sum the tail directly there
    if below > 0.999 {
        let mut tail = 0.0;
        let mut k = q;
        loop {
            let term = poisson_ln_pmf(d, k).exp();
            tail += term;
            if term < tail * 1e-17 || k > q + 10_000 {
                break;
            }
            k += 1;
        }
        tail
    } else {
        (1.0 - below).max(0.0)
    }
}
