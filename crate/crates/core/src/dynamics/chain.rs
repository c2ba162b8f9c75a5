use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::graph::{IsingInstance, Spin};
use crate::scalar::{logistic, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub spins: Vec<Spin>,
    /// Number of updates applied.
    pub steps: u64,
    /// Elapsed continuous time (unused in discrete runs).
    pub time: f64,
}

impl ChainState {
    /// Wraps a configuration, overwriting clamped sites with their clamp.
    pub fn from_spins<S: Scalar>(inst: &IsingInstance<S>, mut spins: Vec<Spin>) -> Self {
        assert_eq!(spins.len(), inst.n(), "configuration length");
        for (v, s) in spins.iter_mut().enumerate() {
            if let Some(c) = inst.clamp(v) {
                *s = c;
            }
        }
        ChainState { spins, steps: 0, time: 0.0 }
    }

    pub fn constant<S: Scalar>(inst: &IsingInstance<S>, spin: Spin) -> Self {
        Self::from_spins(inst, vec![spin; inst.n()])
    }

    pub fn all_plus<S: Scalar>(inst: &IsingInstance<S>) -> Self {
        Self::constant(inst, Spin::Plus)
    }

    pub fn all_minus<S: Scalar>(inst: &IsingInstance<S>) -> Self {
        Self::constant(inst, Spin::Minus)
    }

    /// Independent fair spins on the free sites.
    pub fn random<S: Scalar, R: Rng + ?Sized>(inst: &IsingInstance<S>, rng: &mut R) -> Self {
        let spins = (0..inst.n()).map(|_| Spin::from_bool(rng.random::<bool>())).collect();
        Self::from_spins(inst, spins)
    }

    pub fn plus_count(&self) -> usize {
        self.spins.iter().filter(|s| s.is_plus()).count()
    }
}

/// Heat-bath probability that `v` becomes `+` given the other spins.
#[inline]
pub fn plus_probability<S: Scalar>(inst: &IsingInstance<S>, spins: &[Spin], v: usize) -> S {
    match inst.clamp(v) {
        Some(s) => {
            if s.is_plus() {
                S::one()
            } else {
                S::zero()
            }
        }
        None => logistic(S::lit(2.0) * inst.local_field(v, |u| spins[u].sign())),
    }
}

/// Applies the update `(v, u)`; returns the new spin.
#[inline]
pub fn apply_update<S: Scalar>(inst: &IsingInstance<S>, spins: &mut [Spin], v: usize, u: f64) -> Spin {
    let s = match inst.clamp(v) {
        Some(c) => c,
        None => Spin::from_bool(S::lit(u) <= plus_probability(inst, spins, v)),
    };
    spins[v] = s;
    s
}

/// One update at a uniform site.
pub fn step_discrete<S: Scalar, R: Rng + ?Sized>(state: &mut ChainState, inst: &IsingInstance<S>, rng: &mut R) {
    if inst.n() == 0 {
        return;
    }
    let v = rng.random_range(0..inst.n());
    let u: f64 = rng.random();
    apply_update(inst, &mut state.spins, v, u);
    state.steps += 1;
}

/// Runs every site at rate one for time `t`: draws `M ~ Poisson(n t)` and
/// applies `M` uniform-site updates. Returns `M`.
pub fn run_continuous<S: Scalar, R: Rng + ?Sized>(state: &mut ChainState, inst: &IsingInstance<S>, t: f64, rng: &mut R) -> u64 {
    assert!(t >= 0.0, "negative duration");
    let rate = inst.n() as f64 * t;
    let m = if rate > 0.0 { Poisson::new(rate).expect("positive Poisson rate").sample(rng) as u64 } else { 0 };
    for _ in 0..m {
        step_discrete(state, inst, rng);
    }
    state.time += t;
    m
}
