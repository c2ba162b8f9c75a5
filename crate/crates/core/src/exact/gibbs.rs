use crate::error::{Error, Result};
use crate::graph::{IsingInstance, Spin};
use crate::scalar::{log_sum_exp, Scalar};

pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// The Gibbs distribution `P(sigma) ∝ exp(H(sigma))` over the free vertices.
#[derive(Debug, Clone)]
pub struct ExactDistribution<S> {
    pub n: usize,
    pub free: Vec<usize>,
    pub probabilities: Vec<S>,
    pub log_probabilities: Vec<S>,
    /// Log partition function over free configurations. Clamped vertices
    /// contribute their couplings but not their (infinite) field terms.
    pub log_z: S,
    clamps: Vec<Option<Spin>>,
}

impl<S: Scalar> ExactDistribution<S> {
    pub fn dim(&self) -> usize {
        self.probabilities.len()
    }

    /// Spin of vertex `v` in state `x`.
    #[inline]
    pub fn spin(&self, x: usize, v: usize) -> Spin {
        match self.clamps[v] {
            Some(s) => s,
            None => {
                let i = self.free.binary_search(&v).unwrap();
                Spin::from_bool(x >> i & 1 == 1)
            }
        }
    }

    /// State index of a full configuration (clamped entries are ignored).
    pub fn index_of(&self, config: &[Spin]) -> usize {
        self.free.iter().enumerate().filter(|(_, &v)| config[v].is_plus()).map(|(i, _)| 1 << i).sum()
    }

    pub fn marginal_plus(&self, v: usize) -> S {
        match self.clamps[v] {
            Some(Spin::Plus) => S::one(),
            Some(Spin::Minus) => S::zero(),
            None => {
                let i = self.free.binary_search(&v).unwrap();
                self.probabilities.iter().enumerate().filter(|(x, _)| x >> i & 1 == 1).map(|(_, &p)| p).sum()
            }
        }
    }

    pub fn marginals(&self) -> Vec<S> {
        (0..self.n).map(|v| self.marginal_plus(v)).collect()
    }

    pub fn min_log_probability(&self) -> S {
        self.log_probabilities.iter().copied().fold(S::infinity(), S::min)
    }
}

/// `H(sigma)` restricted to the terms that vary or are finite.
fn hamiltonian<S: Scalar>(inst: &IsingInstance<S>, spins: &[i8]) -> S {
    let mut h = S::zero();
    for (u, v, b) in inst.edges() {
        if spins[u] == spins[v] {
            h = h + b;
        } else {
            h = h - b;
        }
    }
    for (v, &s) in spins.iter().enumerate() {
        if let Some(f) = inst.field(v).finite() {
            h = if s > 0 { h + f } else { h - f };
        }
    }
    h
}

pub fn enumerate_gibbs<S: Scalar>(inst: &IsingInstance<S>) -> Result<ExactDistribution<S>> {
    enumerate_gibbs_capped(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_gibbs_capped<S: Scalar>(inst: &IsingInstance<S>, cap: usize) -> Result<ExactDistribution<S>> {
    let free = inst.free_vertices();
    if free.len() > cap {
        return Err(Error::SizeCap { what: "free vertices for enumeration", actual: free.len(), cap });
    }
    let clamps: Vec<Option<Spin>> = (0..inst.n()).map(|v| inst.clamp(v)).collect();
    let mut spins: Vec<i8> = clamps.iter().map(|c| c.map_or(-1, Spin::sign)).collect();
    let dim = 1usize << free.len();
    let mut energies = Vec::with_capacity(dim);
    for x in 0..dim {
        for (i, &v) in free.iter().enumerate() {
            spins[v] = if x >> i & 1 == 1 { 1 } else { -1 };
        }
        energies.push(hamiltonian(inst, &spins));
    }
    let log_z = log_sum_exp(&energies);
    let log_probabilities: Vec<S> = energies.iter().map(|&e| e - log_z).collect();
    let probabilities = log_probabilities.iter().map(|&l| l.exp()).collect();
    Ok(ExactDistribution { n: inst.n(), free, probabilities, log_probabilities, log_z, clamps })
}

/// `P(sigma_v = + | sigma_Lambda = eta)` by enumeration.
pub fn conditional_marginal<S: Scalar>(inst: &IsingInstance<S>, v: usize, pins: &[(usize, Spin)]) -> Result<S> {
    conditional_marginal_capped(inst, v, pins, DEFAULT_ENUMERATION_CAP)
}

pub fn conditional_marginal_capped<S: Scalar>(
    inst: &IsingInstance<S>,
    v: usize,
    pins: &[(usize, Spin)],
    cap: usize,
) -> Result<S> {
    if v >= inst.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: inst.n() });
    }
    if pins.iter().any(|&(u, _)| u == v) {
        return Err(Error::invalid(format!("vertex {v} is in the conditioning set")));
    }
    let conditioned = inst.pinned(pins)?;
    Ok(enumerate_gibbs_capped(&conditioned, cap)?.marginal_plus(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, star, Field};

    #[test]
    fn single_vertex_is_fair() {
        let inst = IsingInstance::<f64>::build(1, &[], &[]).unwrap();
        let d = enumerate_gibbs(&inst).unwrap();
        assert_eq!(d.marginal_plus(0), 0.5);
    }

    #[test]
    fn edge_agreement_probability() {
        let beta = 0.7f64;
        let inst = IsingInstance::build(2, &[(0, 1, beta)], &[]).unwrap();
        let d = enumerate_gibbs(&inst).unwrap();
        // states 0b00 and 0b11 agree
        let agree = d.probabilities[0] + d.probabilities[3];
        let want = beta.exp() / (beta.exp() + (-beta).exp());
        assert!((agree - want).abs() < 1e-14);
        let z = 2.0 * beta.exp() + 2.0 * (-beta).exp();
        assert!((d.log_z - z.ln()).abs() < 1e-14);
    }

    #[test]
    fn zero_coupling_factorizes() {
        let hs = [0.3f64, -1.2, 2.0];
        let fields: Vec<_> = hs.iter().enumerate().map(|(v, &h)| (v, Field::Finite(h))).collect();
        let inst = IsingInstance::build(3, &[(0, 1, 0.0), (1, 2, 0.0)], &fields).unwrap();
        let d = enumerate_gibbs(&inst).unwrap();
        for (v, &h) in hs.iter().enumerate() {
            let want = 1.0 / (1.0 + (-2.0 * h).exp());
            assert!((d.marginal_plus(v) - want).abs() < 1e-14);
        }
        let total: f64 = d.probabilities.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = IsingInstance::<f64>::uniform(&path(5), 0.1).unwrap();
        assert!(enumerate_gibbs_capped(&inst, 4).unwrap_err().is_size_cap());
    }

    #[test]
    fn star_center_independent_at_zero_coupling() {
        let inst = IsingInstance::<f64>::uniform(&star(4), 0.0).unwrap();
        let pins: Vec<_> = (1..=4).map(|u| (u, Spin::Plus)).collect();
        let p = conditional_marginal(&inst, 0, &pins).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empty_conditioning_is_marginal() {
        let inst = IsingInstance::build(3, &[(0, 1, 0.4f64), (1, 2, 0.9)], &[(2, Field::Finite(0.5))]).unwrap();
        let a = conditional_marginal(&inst, 0, &[]).unwrap();
        let b = enumerate_gibbs(&inst).unwrap().marginal_plus(0);
        assert_eq!(a, b);
    }

    #[test]
    fn conditioning_on_contradicted_clamp_fails() {
        let inst = IsingInstance::build(2, &[(0, 1, 0.4f64)], &[(1, Field::PlusInfinity)]).unwrap();
        assert_eq!(conditional_marginal(&inst, 0, &[(1, Spin::Minus)]).unwrap_err(), Error::ZeroProbability(1));
    }
}
