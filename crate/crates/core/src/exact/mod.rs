//! Brute-force ground truth for small instances.
//!
//! States range over the unclamped vertices only; bit `i` of a state index
//! is the spin of `free[i]` (`1` = `+`).

mod dirichlet;
mod gibbs;
pub mod spectrum;

pub use dirichlet::{dirichlet_check, DirichletReport};
pub use gibbs::{
    conditional_marginal, conditional_marginal_capped, enumerate_gibbs, enumerate_gibbs_capped,
    ExactDistribution, DEFAULT_ENUMERATION_CAP,
};
pub use spectrum::{
    exact_mixing_time, transition_matrix, transition_matrix_capped, TransitionSpectrum,
    DEFAULT_MATRIX_CAP, MIXING_THRESHOLD,
};
