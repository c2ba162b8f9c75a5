use super::spectrum::TransitionSpectrum;
use crate::error::{Error, Result};

/// Relative slack allowed on `Var f / E(f, f) <= τ`.
const RATIO_SLACK: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DirichletReport {
    pub relaxation_time: f64,
    /// `Var_π f / E(f, f)` per test function.
    pub ratios: Vec<f64>,
    pub holds: bool,
}

/// Checks `Var_π f <= τ E(f, f)` for each mean-zero `f` (indexed by state).
pub fn dirichlet_check(spectrum: &TransitionSpectrum, functions: &[Vec<f64>]) -> Result<DirichletReport> {
    let pi = &spectrum.stationary;
    let p = &spectrum.matrix;
    let dim = spectrum.dim();
    let mut ratios = Vec::with_capacity(functions.len());
    for f in functions {
        if f.len() != dim {
            return Err(Error::invalid(format!("test function has {} entries, chain has {dim} states", f.len())));
        }
        let scale = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mean: f64 = pi.iter().zip(f).map(|(a, b)| a * b).sum();
        if scale == 0.0 || f.iter().all(|&x| x == f[0]) {
            return Err(Error::invalid("test function is constant"));
        }
        if mean.abs() > 1e-9 * scale {
            return Err(Error::invalid(format!("test function has mean {mean:e}, expected 0")));
        }
        let variance: f64 = pi.iter().zip(f).map(|(a, b)| a * (b - mean).powi(2)).sum();
        let mut form = 0.0;
        for x in 0..dim {
            for y in 0..dim {
                if x != y {
                    form += pi[x] * p[(x, y)] * (f[x] - f[y]).powi(2);
                }
            }
        }
        form *= 0.5;
        ratios.push(if form > 0.0 { variance / form } else { f64::INFINITY });
    }
    let tau = spectrum.relaxation_time;
    let holds = ratios.iter().all(|&r| r <= tau * (1.0 + RATIO_SLACK));
    Ok(DirichletReport { relaxation_time: tau, ratios, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::transition_matrix;
    use crate::graph::{cycle, IsingInstance};

    fn centered(spectrum: &TransitionSpectrum, f: Vec<f64>) -> Vec<f64> {
        let mean: f64 = spectrum.stationary.iter().zip(&f).map(|(a, b)| a * b).sum();
        f.into_iter().map(|x| x - mean).collect()
    }

    #[test]
    fn second_eigenfunction_attains_tau() {
        let inst = IsingInstance::<f64>::uniform(&cycle(4), 0.6).unwrap();
        let s = transition_matrix(&inst).unwrap();
        let f = centered(&s, s.eigenfunction(1));
        let r = dirichlet_check(&s, &[f]).unwrap();
        assert!(r.holds);
        assert!((r.ratios[0] - s.relaxation_time).abs() < 1e-8 * s.relaxation_time);
    }

    #[test]
    fn arbitrary_functions_respect_tau() {
        let inst = IsingInstance::<f64>::uniform(&cycle(3), 0.9).unwrap();
        let s = transition_matrix(&inst).unwrap();
        let fs: Vec<Vec<f64>> = (1..6).map(|k| centered(&s, (0..8).map(|x| ((x * k) as f64).sin()).collect())).collect();
        assert!(dirichlet_check(&s, &fs).unwrap().holds);
    }

    #[test]
    fn rejects_constant_and_biased() {
        let inst = IsingInstance::<f64>::uniform(&cycle(3), 0.3).unwrap();
        let s = transition_matrix(&inst).unwrap();
        assert!(dirichlet_check(&s, &[vec![0.0; 8]]).is_err());
        assert!(dirichlet_check(&s, &[vec![1.0; 8]]).is_err());
        let mut f = vec![0.0; 8];
        f[0] = 1.0;
        assert!(dirichlet_check(&s, &[f]).is_err());
    }
}
