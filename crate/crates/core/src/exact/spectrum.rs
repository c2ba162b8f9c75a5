//! Transition matrix of the heat-bath chain, its spectrum and exact mixing
//! times.
//!
//! The chain picks one of the `n` sites uniformly (clamped sites included;
//! picking one is a no-op) and resamples it from its conditional law.
//! Continuous time runs every site at rate 1, i.e. generator `n (P - I)`.
//!
//! Eigenvalues come from the symmetrized kernel, whose entries are
//! `sqrt(P_xy P_yx)` by detailed balance; that form never divides by a
//! stationary mass, so it stays accurate when some states carry mass below
//! the `f64` range. Mixing times are read off matrix powers for the same
//! reason.

use nalgebra::{DMatrix, SymmetricEigen};

use super::gibbs::enumerate_gibbs_capped;
use crate::error::{Error, Result};
use crate::graph::IsingInstance;
use crate::scalar::{logistic, Scalar};

pub const DEFAULT_MATRIX_CAP: usize = 12;

/// Worst-start total-variation threshold `1/(2e)`.
pub const MIXING_THRESHOLD: f64 = 0.183_939_720_585_721_16;

const MAX_DOUBLINGS: usize = 80;

#[derive(Debug, Clone)]
pub struct TransitionSpectrum {
    pub n_sites: usize,
    pub free: Vec<usize>,
    /// Row-stochastic transition matrix.
    pub matrix: DMatrix<f64>,
    pub stationary: Vec<f64>,
    /// `1 = λ_1 >= λ_2 >= ...`
    pub eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    pub gap: f64,
    pub relaxation_time: f64,
}

pub fn transition_matrix<S: Scalar>(inst: &IsingInstance<S>) -> Result<TransitionSpectrum> {
    transition_matrix_capped(inst, DEFAULT_MATRIX_CAP)
}

pub fn transition_matrix_capped<S: Scalar>(inst: &IsingInstance<S>, cap: usize) -> Result<TransitionSpectrum> {
    let inst: IsingInstance<f64> = inst.cast();
    let free = inst.free_vertices();
    if free.len() > cap {
        return Err(Error::SizeCap { what: "free vertices for transition matrix", actual: free.len(), cap });
    }
    let dist = enumerate_gibbs_capped(&inst, cap)?;
    let n = inst.n() as f64;
    let dim = dist.dim();
    let mut slot = vec![usize::MAX; inst.n()];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    let clamp_sign: Vec<i8> = (0..inst.n()).map(|v| inst.clamp(v).map_or(0, |s| s.sign())).collect();
    let mut p = DMatrix::<f64>::zeros(dim, dim);
    let idle = (inst.n() - free.len()) as f64 / n;
    for x in 0..dim {
        let sign_of = |u: usize| if slot[u] == usize::MAX { clamp_sign[u] } else if x >> slot[u] & 1 == 1 { 1 } else { -1 };
        p[(x, x)] += idle;
        for (i, &v) in free.iter().enumerate() {
            let plus = logistic(2.0 * inst.local_field(v, sign_of));
            let up = x | 1 << i;
            let down = x & !(1 << i);
            p[(x, up)] += plus / n;
            p[(x, down)] += (1.0 - plus) / n;
        }
    }
    let sym = DMatrix::from_fn(dim, dim, |x, y| if x == y { p[(x, x)] } else { (p[(x, y)] * p[(y, x)]).sqrt() });
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    let gap = if dim == 1 {
        1.0
    } else {
        let lambda_min = eigenvalues[dim - 1];
        (1.0 - eigenvalues[1]).min(1.0 - lambda_min.abs())
    };
    Ok(TransitionSpectrum {
        n_sites: inst.n(),
        free,
        matrix: p,
        stationary: dist.probabilities,
        eigenvalues,
        eigenvectors,
        gap,
        relaxation_time: 1.0 / gap,
    })
}

impl TransitionSpectrum {
    pub fn dim(&self) -> usize {
        self.stationary.len()
    }

    /// `n (1 - λ_2)`: the gap of the rate-1-per-site continuous chain.
    pub fn continuous_gap(&self) -> f64 {
        if self.dim() == 1 {
            return f64::INFINITY;
        }
        self.n_sites as f64 * (1.0 - self.eigenvalues[1])
    }

    pub fn continuous_relaxation_time(&self) -> f64 {
        1.0 / self.continuous_gap()
    }

    /// Right eigenfunction `f = φ / sqrt(π)` for eigenvalue index `i`.
    pub fn eigenfunction(&self, i: usize) -> Vec<f64> {
        (0..self.dim()).map(|x| self.eigenvectors[(x, i)] / self.stationary[x].sqrt()).collect()
    }

    /// `max |π_x P_xy - π_y P_yx|`.
    pub fn detailed_balance_error(&self) -> f64 {
        let pi = &self.stationary;
        let mut worst: f64 = 0.0;
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                worst = worst.max((pi[x] * self.matrix[(x, y)] - pi[y] * self.matrix[(y, x)]).abs());
            }
        }
        worst
    }

    /// `max |(πP)_y - π_y|`.
    pub fn stationarity_error(&self) -> f64 {
        let pi = &self.stationary;
        (0..self.dim())
            .map(|y| ((0..self.dim()).map(|x| pi[x] * self.matrix[(x, y)]).sum::<f64>() - pi[y]).abs())
            .fold(0.0, f64::max)
    }

    /// `max_x ||M(x, ·) - π||_TV` for a kernel `M`.
    pub fn worst_tv(&self, m: &DMatrix<f64>) -> f64 {
        (0..self.dim())
            .map(|x| 0.5 * (0..self.dim()).map(|y| (m[(x, y)] - self.stationary[y]).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Worst-start TV after `t` discrete steps.
    pub fn discrete_tv(&self, t: u64) -> f64 {
        self.worst_tv(&matrix_power(&self.matrix, t))
    }

    /// Smallest `t` with worst-start TV `<= 1/(2e)`.
    pub fn mixing_time(&self) -> Result<u64> {
        self.first_time_below(self.matrix.clone())
    }

    /// Continuous-time kernel `exp(t n (P - I))`.
    pub fn heat_kernel(&self, t: f64) -> DMatrix<f64> {
        let rate = self.n_sites as f64;
        let mut squarings = 0;
        let mut tau = t;
        while rate * tau > 1.0 / 64.0 {
            tau /= 2.0;
            squarings += 1;
        }
        let mut k = self.uniformized_step(rate * tau);
        for _ in 0..squarings {
            k = &k * &k;
        }
        k
    }

    pub fn continuous_tv(&self, t: f64) -> f64 {
        self.worst_tv(&self.heat_kernel(t))
    }

    /// Continuous-time mixing time, returned as the smallest multiple of the
    /// base step `2^-k <= 1/(64 n)` at which the worst-start TV is below
    /// `1/(2e)`; it overestimates the exact value by less than one step.
    pub fn continuous_mixing_time(&self) -> Result<f64> {
        let rate = self.n_sites as f64;
        let mut step = 1.0;
        while rate * step > 1.0 / 64.0 {
            step /= 2.0;
        }
        let count = self.first_time_below(self.uniformized_step(rate * step))?;
        Ok(count as f64 * step)
    }

    /// `e^{-a} Σ_k a^k/k! P^k`, truncated; accurate to `1e-16` for `a <= 1/64`.
    fn uniformized_step(&self, a: f64) -> DMatrix<f64> {
        let dim = self.dim();
        let mut acc = DMatrix::<f64>::identity(dim, dim);
        for k in (1..=8).rev() {
            acc = DMatrix::identity(dim, dim) + (&self.matrix * acc) * (a / k as f64);
        }
        acc * (-a).exp()
    }

    /// Smallest `k >= 1` with `worst_tv(step^k) <= threshold` (0 if the
    /// chain starts mixed), by repeated squaring and a binary descent over
    /// the stored powers.
    fn first_time_below(&self, step: DMatrix<f64>) -> Result<u64> {
        let dim = self.dim();
        if self.worst_tv(&DMatrix::<f64>::identity(dim, dim)) <= MIXING_THRESHOLD {
            return Ok(0);
        }
        let mut powers = vec![step];
        loop {
            let last = powers.last().unwrap();
            if self.worst_tv(last) <= MIXING_THRESHOLD {
                break;
            }
            if powers.len() >= MAX_DOUBLINGS {
                return Err(Error::invalid("chain did not mix within 2^80 steps"));
            }
            let sq = last * last;
            powers.push(sq);
        }
        let top = powers.len() - 1;
        if top == 0 {
            return Ok(1);
        }
        // step^(2^(top-1)) is still above threshold
        let mut acc = powers[top - 1].clone();
        let mut count: u64 = 1 << (top - 1);
        for j in (0..top - 1).rev() {
            let cand = &acc * &powers[j];
            if self.worst_tv(&cand) > MIXING_THRESHOLD {
                acc = cand;
                count += 1 << j;
            }
        }
        Ok(count + 1)
    }
}

fn matrix_power(m: &DMatrix<f64>, mut t: u64) -> DMatrix<f64> {
    let mut result = DMatrix::<f64>::identity(m.nrows(), m.ncols());
    let mut base = m.clone();
    while t > 0 {
        if t & 1 == 1 {
            result = &result * &base;
        }
        t >>= 1;
        if t > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Discrete mixing time of the chain described by `spectrum`.
pub fn exact_mixing_time(spectrum: &TransitionSpectrum) -> Result<u64> {
    spectrum.mixing_time()
}
