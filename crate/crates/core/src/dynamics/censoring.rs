use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Num, ToPrimitive};
use rand::Rng;
use rayon::prelude::*;

use super::chain::{apply_update, ChainState};
use super::schedule::UpdateSchedule;
use crate::error::{Error, Result};
use crate::graph::IsingInstance;
use crate::rng::stream;
use crate::scalar::Scalar;
use crate::stats::{wilson, Interval, Z95};

/// Largest number of free vertices for the exact check.
pub const EXACT_FREE_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DominanceMode {
    /// Distribution vectors in `f64`; up-set comparisons allow `1e-12`.
    ExactFloat,
    /// Distribution vectors in exact rationals; comparisons are exact.
    ExactRational,
    /// Monte Carlo estimates of per-vertex magnetizations.
    Sampling { replicas: u64, seed: u64 },
}

/// Heat-bath weights as activities: the update at `v` has odds
/// `P(+)/P(-) = b_v * prod_u a_uv^{sigma_u}` with `b_v = e^{2 h_v}` and
/// `a_uv = e^{2 beta_uv}`.
#[derive(Debug, Clone)]
pub struct Activities<W> {
    pub n: usize,
    /// Free vertices; bit `i` of a state is `free[i]`.
    pub free: Vec<usize>,
    field: Vec<W>,
    /// For each free vertex: `(free index or clamp, activity)` per neighbor.
    neighbors: Vec<Vec<(Neighbor, W)>>,
}

#[derive(Debug, Clone, Copy)]
enum Neighbor {
    Free(usize),
    Clamped(bool),
}

impl<W: Clone> Activities<W> {
    /// Builds activities from `e^{2 beta}` and `e^{2 h}` through `convert`.
    pub fn from_instance<S: Scalar>(inst: &IsingInstance<S>, convert: impl Fn(f64) -> W) -> Self {
        let free = inst.free_vertices();
        let mut slot = vec![usize::MAX; inst.n()];
        for (i, &v) in free.iter().enumerate() {
            slot[v] = i;
        }
        let field = free
            .iter()
            .map(|&v| convert((2.0 * inst.field(v).finite().unwrap_or_else(S::zero).as_f64()).exp()))
            .collect();
        let neighbors = free
            .iter()
            .map(|&v| {
                inst.couplings(v)
                    .map(|(u, b)| {
                        let kind = match inst.clamp(u) {
                            Some(s) => Neighbor::Clamped(s.is_plus()),
                            None => Neighbor::Free(slot[u]),
                        };
                        (kind, convert((2.0 * b.as_f64()).exp()))
                    })
                    .collect()
            })
            .collect();
        Activities { n: inst.n(), free, field, neighbors }
    }
}

impl Activities<BigRational> {
    /// Exact rationals equal to the `f64` activities.
    pub fn rational<S: Scalar>(inst: &IsingInstance<S>) -> Self {
        Self::from_instance(inst, |x| BigRational::from_float(x).expect("finite activity"))
    }
}

impl<W: Clone + Num + PartialOrd> Activities<W> {
    fn dim(&self) -> usize {
        1 << self.free.len()
    }

    fn point_mass(&self, plus: bool) -> Vec<W> {
        let mut mu = vec![W::zero(); self.dim()];
        mu[if plus { self.dim() - 1 } else { 0 }] = W::one();
        mu
    }

    /// `(P(+), P(-))` of the update at each free vertex, for every state.
    fn table(&self) -> Vec<Vec<(W, W)>> {
        (0..self.free.len())
            .map(|i| {
                (0..self.dim())
                    .map(|x| {
                        let mut odds = self.field[i].clone();
                        for (nb, a) in &self.neighbors[i] {
                            let up = match *nb {
                                Neighbor::Free(j) => x >> j & 1 == 1,
                                Neighbor::Clamped(p) => p,
                            };
                            odds = if up { odds * a.clone() } else { odds / a.clone() };
                        }
                        let denom = W::one() + odds.clone();
                        (odds / denom.clone(), W::one() / denom)
                    })
                    .collect()
            })
            .collect()
    }

    /// Distribution after one heat-bath update at `site`.
    fn update(&self, table: &[Vec<(W, W)>], mu: &[W], site: usize) -> Vec<W> {
        let Some(i) = self.free.iter().position(|&v| v == site) else {
            return mu.to_vec();
        };
        let mut out = vec![W::zero(); mu.len()];
        for (x, m) in mu.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let (p_plus, p_minus) = &table[i][x];
            let hi = x | 1 << i;
            let lo = x & !(1 << i);
            out[hi] = out[hi].clone() + m.clone() * p_plus.clone();
            out[lo] = out[lo].clone() + m.clone() * p_minus.clone();
        }
        out
    }

    fn evolve(&self, table: &[Vec<(W, W)>], start_plus: bool, sites: &[usize]) -> Vec<W> {
        sites.iter().fold(self.point_mass(start_plus), |mu, &v| self.update(table, &mu, v))
    }
}

#[derive(Debug, Clone)]
pub struct DominanceReport {
    pub mode: DominanceMode,
    pub holds: bool,
    /// Up-sets compared (exact modes only).
    pub up_sets_checked: usize,
    /// Smallest of `Z+(U) - X+(U)`, `X+(U) - X-(U)`, `X-(U) - Z-(U)` over
    /// up-sets `U` (exact modes only).
    pub worst_margin: f64,
    pub vertices: Vec<usize>,
    /// `P(+)` at each vertex under `Z+`, `X+`, `X-`, `Z-`.
    pub per_vertex: Vec<[Interval; 4]>,
}

/// Returns positions of `sub` inside `full` (greedy, leftmost) if it is a
/// subsequence.
pub fn is_subsequence(full: &[usize], sub: &[usize]) -> Option<Vec<usize>> {
    let mut pos = Vec::with_capacity(sub.len());
    let mut it = full.iter().enumerate();
    for &s in sub {
        let (i, _) = it.by_ref().find(|&(_, &f)| f == s)?;
        pos.push(i);
    }
    Some(pos)
}

/// Keeps the `i`-th site of `full` iff it is allowed at discrete time `i + 1`.
pub fn censor_by_windows(full: &[usize], schedule: &UpdateSchedule) -> Vec<usize> {
    let masks = schedule.masks(full.iter().copied().max().map_or(0, |m| m + 1));
    full.iter()
        .enumerate()
        .filter(|&(i, &v)| schedule.window_at((i + 1) as f64).is_none_or(|w| masks[w][v]))
        .map(|(_, &v)| v)
        .collect()
}

/// All up-closed subsets of `{0,1}^k` (`k <= 4`), as bitmasks over states.
pub fn up_sets(k: usize) -> Vec<u32> {
    assert!(k <= EXACT_FREE_CAP, "up-set enumeration limited to {EXACT_FREE_CAP} coordinates");
    let states = 1usize << k;
    (0..1u64 << states)
        .map(|s| s as u32)
        .filter(|&set| {
            (0..states).filter(|&x| set >> x & 1 == 1).all(|x| (0..k).all(|b| set >> (x | 1 << b) & 1 == 1))
        })
        .collect()
}

/// Exact check that `Z+ >= X+ >= X- >= Z-` on every up-set, where `X` runs
/// the `full` sequence and `Z` the `censored` subsequence, from the all-plus
/// and all-minus starts.
pub fn censoring_dominance_exact<W>(act: &Activities<W>, full: &[usize], censored: &[usize], tolerance: W) -> Result<DominanceReport>
where
    W: Clone + Num + PartialOrd + ToPrimitive,
{
    let chains = evolve_chains(act, full, censored)?;
    Ok(compare_chains(act, &chains, tolerance, |w| w.to_f64().unwrap_or(f64::NAN)))
}

/// Rational check; the comparisons run on integer numerators over a common
/// denominator so the up-set sums need no gcd reductions.
fn censoring_dominance_rational(act: &Activities<BigRational>, full: &[usize], censored: &[usize]) -> Result<DominanceReport> {
    let chains = evolve_chains(act, full, censored)?;
    let lcm = chains.iter().flatten().fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
    let scaled = chains.map(|c| c.iter().map(|q| q.numer() * (&lcm / q.denom())).collect::<Vec<BigInt>>());
    let mut r = compare_chains(act, &scaled, BigInt::from(0), |w| {
        BigRational::new(w.clone(), lcm.clone()).to_f64().unwrap_or(f64::NAN)
    });
    r.mode = DominanceMode::ExactRational;
    Ok(r)
}

fn evolve_chains<W>(act: &Activities<W>, full: &[usize], censored: &[usize]) -> Result<[Vec<W>; 4]>
where
    W: Clone + Num + PartialOrd,
{
    if is_subsequence(full, censored).is_none() {
        return Err(Error::invalid("censored sequence is not a subsequence of the full sequence"));
    }
    if act.free.len() > EXACT_FREE_CAP {
        return Err(Error::SizeCap { what: "free vertices for exact censoring check", actual: act.free.len(), cap: EXACT_FREE_CAP });
    }
    let table = act.table();
    Ok([
        act.evolve(&table, true, censored),
        act.evolve(&table, true, full),
        act.evolve(&table, false, full),
        act.evolve(&table, false, censored),
    ])
}

fn compare_chains<W, A>(act: &Activities<A>, chains: &[Vec<W>; 4], tolerance: W, to_f64: impl Fn(&W) -> f64) -> DominanceReport
where
    W: Clone + Num + PartialOrd,
{
    let ups = up_sets(act.free.len());
    let mass = |mu: &[W], set: u32| {
        mu.iter().enumerate().filter(|&(x, _)| set >> x & 1 == 1).fold(W::zero(), |acc, (_, m)| acc + m.clone())
    };
    let diffs: Vec<Vec<W>> =
        chains.windows(2).map(|p| p[0].iter().zip(&p[1]).map(|(a, b)| a.clone() - b.clone()).collect()).collect();
    let mut holds = true;
    let mut worst: Option<W> = None;
    for &u in &ups {
        for d in &diffs {
            let diff = mass(d, u);
            if diff.clone() + tolerance.clone() < W::zero() {
                holds = false;
            }
            if worst.as_ref().is_none_or(|w| diff < *w) {
                worst = Some(diff);
            }
        }
    }
    let per_vertex = (0..act.free.len())
        .map(|i| {
            let set = (0..1u32 << act.free.len()).filter(|x| x >> i & 1 == 1).fold(0u32, |s, x| s | 1 << x);
            std::array::from_fn(|c| {
                let p = to_f64(&mass(&chains[c], set));
                Interval { estimate: p, lo: p, hi: p }
            })
        })
        .collect();
    DominanceReport {
        mode: DominanceMode::ExactRational,
        holds,
        up_sets_checked: ups.len(),
        worst_margin: worst.as_ref().map_or(f64::INFINITY, &to_f64),
        vertices: act.free.clone(),
        per_vertex,
    }
}

pub fn censoring_dominance_check<S: Scalar>(
    inst: &IsingInstance<S>,
    full: &[usize],
    censored: &[usize],
    mode: DominanceMode,
) -> Result<DominanceReport> {
    if let Some(&v) = full.iter().find(|&&v| v >= inst.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: inst.n() });
    }
    match mode {
        DominanceMode::ExactFloat => {
            let act = Activities::from_instance(inst, |x| x);
            let mut r = censoring_dominance_exact(&act, full, censored, 1e-12)?;
            r.mode = mode;
            Ok(r)
        }
        DominanceMode::ExactRational => {
            let act = Activities::rational(inst);
            censoring_dominance_rational(&act, full, censored)
        }
        DominanceMode::Sampling { replicas, seed } => sample_dominance(inst, full, censored, replicas, seed),
    }
}

fn sample_dominance<S: Scalar>(
    inst: &IsingInstance<S>,
    full: &[usize],
    censored: &[usize],
    replicas: u64,
    seed: u64,
) -> Result<DominanceReport> {
    let embed = is_subsequence(full, censored)
        .ok_or_else(|| Error::invalid("censored sequence is not a subsequence of the full sequence"))?;
    if replicas == 0 {
        return Err(Error::invalid("sampling mode needs at least one replica"));
    }
    let n = inst.n();
    let counts = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream(seed, "censoring", r);
            let us: Vec<f64> = (0..full.len()).map(|_| rng.random()).collect();
            let mut z_plus = ChainState::all_plus(inst).spins;
            let mut x_plus = z_plus.clone();
            let mut x_minus = ChainState::all_minus(inst).spins;
            let mut z_minus = x_minus.clone();
            for (&v, &u) in full.iter().zip(&us) {
                apply_update(inst, &mut x_plus, v, u);
                apply_update(inst, &mut x_minus, v, u);
            }
            for (&v, &i) in censored.iter().zip(&embed) {
                apply_update(inst, &mut z_plus, v, us[i]);
                apply_update(inst, &mut z_minus, v, us[i]);
            }
            let mut c = vec![[0u64; 4]; n];
            for (v, row) in c.iter_mut().enumerate() {
                for (k, chain) in [&z_plus, &x_plus, &x_minus, &z_minus].into_iter().enumerate() {
                    row[k] = u64::from(chain[v].is_plus());
                }
            }
            c
        })
        .reduce(
            || vec![[0u64; 4]; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    for k in 0..4 {
                        x[k] += y[k];
                    }
                }
                a
            },
        );
    let vertices: Vec<usize> = inst.free_vertices();
    let per_vertex: Vec<[Interval; 4]> =
        vertices.iter().map(|&v| std::array::from_fn(|k| wilson(counts[v][k], replicas, Z95))).collect();
    // a violation is an ordered pair whose intervals separate the wrong way
    let holds = per_vertex.iter().all(|iv| iv.windows(2).all(|p| p[0].hi >= p[1].lo));
    let worst_margin = per_vertex
        .iter()
        .flat_map(|iv| iv.windows(2).map(|p| p[0].estimate - p[1].estimate).collect::<Vec<_>>())
        .fold(f64::INFINITY, f64::min);
    Ok(DominanceReport {
        mode: DominanceMode::Sampling { replicas, seed },
        holds,
        up_sets_checked: 0,
        worst_margin,
        vertices,
        per_vertex,
    })
}
