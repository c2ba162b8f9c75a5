//! Cut-width: exact values for small graphs, the tree concatenation bound,
//! Galton-Watson statistics, and the cut-width mixing bounds.

mod exact;
mod gw;
mod tree;

pub use exact::{cutwidth_exact, cutwidth_exact_capped, DEFAULT_CUTWIDTH_CAP};
pub use gw::{
    calibrate_gw_shift, calibrate_order_stat_shift, gw_cutwidth_stats, order_stat_bound_sample, order_stat_w,
    poisson_domination, DominationCheck, GwCutwidthStats,
};
pub use tree::{tree_cutwidth_ordering, tree_cutwidth_ordering_graph};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CutwidthKind {
    Exact,
    TreeBound,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CutwidthResult {
    pub value: usize,
    /// Witness vertex ordering.
    pub ordering: Vec<usize>,
    pub kind: CutwidthKind,
}

/// `n^2 e^{4 beta (E + d)}`: relaxation-time bound of the discrete sampler.
pub fn relaxation_bound<S: Scalar>(n: usize, beta: S, cutwidth: usize, d: usize) -> S {
    ln_relaxation_bound(n, beta, cutwidth, d).exp()
}

pub fn ln_relaxation_bound<S: Scalar>(n: usize, beta: S, cutwidth: usize, d: usize) -> S {
    S::lit(2.0) * S::lit(n as f64).ln() + S::lit(4.0) * beta * S::lit((cutwidth + d) as f64)
}

/// `80 n^3 e^{5 beta (E + d)}`: mixing-time bound of the sampler.
pub fn mixing_bound_cutwidth<S: Scalar>(n: usize, beta: S, cutwidth: usize, d: usize) -> S {
    ln_mixing_bound_cutwidth(n, beta, cutwidth, d).exp()
}

pub fn ln_mixing_bound_cutwidth<S: Scalar>(n: usize, beta: S, cutwidth: usize, d: usize) -> S {
    S::lit(80.0).ln() + S::lit(3.0) * S::lit(n as f64).ln() + S::lit(5.0) * beta * S::lit((cutwidth + d) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_formulas() {
        assert!((relaxation_bound(2, 0.0f64, 3, 2) - 4.0).abs() < 1e-12);
        let want = 9.0 * 12f64.exp();
        assert!((relaxation_bound(3, 1.0f64, 1, 2) - want).abs() < 1e-9 * want);
        assert!((mixing_bound_cutwidth(1, 0.0f64, 0, 0) - 80.0).abs() < 1e-12);
        assert!(mixing_bound_cutwidth(4, 0.3f64, 2, 3) <= mixing_bound_cutwidth(4, 0.3f64, 3, 3));
    }
}
