use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::exact::cutwidth_exact_capped;
use super::tree::tree_cutwidth_ordering;
use crate::error::{Error, Result};
use crate::graph::gen_galton_watson_poisson;
use crate::rng::{derive_seed, stream};
use crate::stats::{mean, poisson_upper_tail, wilson, Z95};

#[derive(Debug, Clone, serde::Serialize)]
pub struct GwCutwidthStats {
    pub d: f64,
    pub depth: usize,
    /// Tree bound per sample.
    pub bounds: Vec<u32>,
    /// Exact cut-width for samples with at most `exact_cap` vertices.
    pub exact: Vec<Option<u32>>,
    pub sizes: Vec<usize>,
    pub mean: f64,
    pub quantiles: [u32; 3],
}

/// Samples `samples` Poisson(`d`) Galton-Watson trees of depth `depth` and
/// records the tree cut-width bound of each (plus the exact value for trees
/// with at most `exact_cap` vertices).
pub fn gw_cutwidth_stats(d: f64, depth: usize, samples: usize, seed: u64, exact_cap: usize) -> Result<GwCutwidthStats> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let rows: Vec<(u32, Option<u32>, usize)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<(u32, Option<u32>, usize)> {
            let tree = gen_galton_watson_poisson(d, depth, derive_seed(seed, "gw-cutwidth", i))?;
            let bound = tree_cutwidth_ordering(&tree).value as u32;
            let exact = if tree.n() <= exact_cap {
                Some(cutwidth_exact_capped(&tree.graph, exact_cap)?.value as u32)
            } else {
                None
            };
            Ok((bound, exact, tree.n()))
        })
        .collect::<Result<_>>()?;
    let bounds: Vec<u32> = rows.iter().map(|r| r.0).collect();
    let mut sorted = bounds.clone();
    sorted.sort_unstable();
    let q = |p: f64| sorted[((p * (sorted.len() - 1) as f64).round()) as usize];
    Ok(GwCutwidthStats {
        d,
        depth,
        mean: mean(&bounds.iter().map(|&b| b as f64).collect::<Vec<_>>()),
        quantiles: [q(0.5), q(0.9), q(0.99)],
        exact: rows.iter().map(|r| r.1).collect(),
        sizes: rows.iter().map(|r| r.2).collect(),
        bounds,
    })
}

/// `W = X + max_{1 <= i <= X} (Y_(i) - i)` with `Y` sorted ascending; `0` when
/// `X = 0`.
pub fn order_stat_w(ys: &[u32]) -> u32 {
    if ys.is_empty() {
        return 0;
    }
    let mut s = ys.to_vec();
    s.sort_unstable();
    let x = s.len() as i64;
    let m = s.iter().enumerate().map(|(i, &y)| y as i64 - (i as i64 + 1)).max().unwrap();
    (x + m) as u32
}

/// Samples of `W` with `X ~ Po(d)` and `Y_1, ..., Y_X ~ Po(d)` i.i.d.
pub fn order_stat_bound_sample(d: f64, samples: usize, seed: u64) -> Result<Vec<u32>> {
    let po = Poisson::new(d).map_err(|e| Error::invalid(e.to_string()))?;
    Ok((0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, "order-stat", i);
            let x = po.sample(&mut rng) as usize;
            let ys: Vec<u32> = (0..x).map(|_| po.sample(&mut rng) as u32).collect();
            order_stat_w(&ys)
        })
        .collect())
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DominationCheck {
    pub offset: u32,
    pub holds: bool,
    /// `max_q P^(X >= offset + q) - P(Po(d) >= q) - 2 CI`; non-positive when
    /// the test passes.
    pub worst_excess: f64,
    pub worst_q: u32,
}

/// Tests `P^(X >= offset + q) <= P(Po(d) >= q) + 2 CI` for every `q >= 0`,
/// where `CI` is the Wilson half-width of the empirical tail.
pub fn poisson_domination(samples: &[u32], offset: u32, d: f64) -> DominationCheck {
    let n = samples.len() as u64;
    let max = samples.iter().copied().max().unwrap_or(0);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_q = 0;
    for q in 0..=max.saturating_sub(offset) + 1 {
        let hits = samples.iter().filter(|&&x| x >= offset + q).count() as u64;
        let w = wilson(hits, n, Z95);
        let excess = w.estimate - poisson_upper_tail(d, q as u64) - 2.0 * w.half_width();
        if excess > worst {
            worst = excess;
            worst_q = q;
        }
    }
    DominationCheck { offset, holds: worst <= 0.0, worst_excess: worst, worst_q }
}

/// Smallest integer `C'` such that every depth-`l` sample set passes the
/// domination test at offset `C' l`.
pub fn calibrate_gw_shift(d: f64, per_depth: &[(usize, Vec<u32>)], max_shift: u32) -> Option<u32> {
    (0..=max_shift).find(|&c| per_depth.iter().all(|(l, s)| poisson_domination(s, c * *l as u32, d).holds))
}

/// Smallest integer `C` for which `W` passes the domination test at offset `C`.
pub fn calibrate_order_stat_shift(d: f64, samples: &[u32], max_shift: u32) -> Option<u32> {
    (0..=max_shift).find(|&c| poisson_domination(samples, c, d).holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_examples() {
        assert_eq!(order_stat_w(&[]), 0);
        // X = 1: W = 1 + Y - 1
        assert_eq!(order_stat_w(&[4]), 4);
        // sorted (0, 2, 5): max(0-1, 2-2, 5-3) = 2, W = 5
        assert_eq!(order_stat_w(&[5, 0, 2]), 5);
    }

    #[test]
    fn depth_zero_is_zero() {
        let s = gw_cutwidth_stats(3.0, 0, 100, 1, 12).unwrap();
        assert!(s.bounds.iter().all(|&b| b == 0));
    }

    #[test]
    fn exact_never_exceeds_bound() {
        let s = gw_cutwidth_stats(2.0, 3, 200, 4, 12).unwrap();
        for (b, e) in s.bounds.iter().zip(&s.exact) {
            if let Some(e) = e {
                assert!(e <= b);
            }
        }
    }

    #[test]
    fn domination_of_poisson_itself() {
        let po = Poisson::new(3.0).unwrap();
        let mut rng = stream(2, "t", 0);
        let xs: Vec<u32> = (0..5000).map(|_| po.sample(&mut rng) as u32).collect();
        assert!(poisson_domination(&xs, 0, 3.0).holds);
        assert_eq!(calibrate_order_stat_shift(3.0, &xs, 10), Some(0));
    }
}
