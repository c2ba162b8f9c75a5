use crate::error::{Error, Result};
use crate::exact::{conditional_marginal_capped, DEFAULT_ENUMERATION_CAP};
use crate::graph::{IsingInstance, Spin};
use crate::scalar::Scalar;

use super::tree::DEFAULT_NODE_CAP;

/// Influence bounds of the sphere `S(v, R)` on the spin at `v`.
#[derive(Debug, Clone)]
pub struct SpatialMixingCert<S> {
    pub center: usize,
    pub radius: usize,
    /// `S(v, R)`, ascending.
    pub boundary: Vec<usize>,
    /// Bound on `a_u` for each boundary vertex, aligned with `boundary`.
    pub a_u: Vec<S>,
    /// Number of SAW copies of each boundary vertex.
    pub copies: Vec<usize>,
    pub total: S,
    pub pass: bool,
}

impl<S: Scalar> SpatialMixingCert<S> {
    pub fn max_copies(&self) -> usize {
        self.copies.iter().copied().max().unwrap_or(0)
    }
}

/// Sums, over self-avoiding walks from `v` that stay in `B(v, R-1)` until
/// their last step onto `u in S(v, R)`, the product of `tanh(beta_e)` along
/// the walk. Walks through clamped vertices carry no influence and are
/// dropped; cycle-closing leaves are fixed and carry none either.
pub fn spatial_bound_a_u<S: Scalar>(inst: &IsingInstance<S>, v: usize, radius: usize) -> Result<SpatialMixingCert<S>> {
    spatial_bound_a_u_capped(inst, v, radius, DEFAULT_NODE_CAP)
}

pub fn spatial_bound_a_u_capped<S: Scalar>(
    inst: &IsingInstance<S>,
    v: usize,
    radius: usize,
    cap: usize,
) -> Result<SpatialMixingCert<S>> {
    if v >= inst.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: inst.n() });
    }
    if radius == 0 {
        return Err(Error::invalid("radius must be at least 1"));
    }
    let ball = inst.ball(v, radius);
    let mut slot = vec![usize::MAX; inst.n()];
    for (i, &u) in ball.boundary.iter().enumerate() {
        slot[u] = i;
    }
    let mut walker = Walker {
        inst,
        slot: &slot,
        a_u: vec![S::zero(); ball.boundary.len()],
        copies: vec![0; ball.boundary.len()],
        on_walk: vec![false; inst.n()],
        visited: 0,
        cap,
    };
    if inst.clamp(v).is_none() {
        walker.walk(v, S::one())?;
    }
    let total: S = walker.a_u.iter().copied().sum();
    Ok(SpatialMixingCert {
        center: v,
        radius,
        boundary: ball.boundary,
        a_u: walker.a_u,
        copies: walker.copies,
        total,
        pass: total <= S::lit(0.25),
    })
}

struct Walker<'a, S> {
    inst: &'a IsingInstance<S>,
    slot: &'a [usize],
    a_u: Vec<S>,
    copies: Vec<usize>,
    on_walk: Vec<bool>,
    visited: usize,
    cap: usize,
}

impl<S: Scalar> Walker<'_, S> {
    fn walk(&mut self, u: usize, weight: S) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::SizeCap { what: "SAW tree nodes", actual: self.visited, cap: self.cap });
        }
        self.on_walk[u] = true;
        let inst = self.inst;
        for (w, beta) in inst.couplings(u) {
            if self.on_walk[w] {
                continue;
            }
            let next = weight * beta.tanh();
            let s = self.slot[w];
            if s != usize::MAX {
                self.a_u[s] = self.a_u[s] + next;
                self.copies[s] += 1;
            } else if inst.clamp(w).is_none() && next > S::zero() {
                self.walk(w, next)?;
            }
        }
        self.on_walk[u] = false;
        Ok(())
    }
}

/// How the other boundary spins are chosen in [`exact_a_u`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalMode {
    /// Every configuration of the remaining sphere.
    Exhaustive,
    /// Only the all-`+` and all-`-` configurations.
    Extremal,
}

/// `sup |P(sigma_v = + | eta^+) - P(sigma_v = + | eta^-)|` over sphere
/// configurations differing only at `u`, computed on `B(v, R)`.
pub fn exact_a_u<S: Scalar>(inst: &IsingInstance<S>, v: usize, radius: usize, u: usize, mode: ExtremalMode) -> Result<S> {
    exact_a_u_capped(inst, v, radius, u, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn exact_a_u_capped<S: Scalar>(
    inst: &IsingInstance<S>,
    v: usize,
    radius: usize,
    u: usize,
    mode: ExtremalMode,
    cap: usize,
) -> Result<S> {
    for x in [v, u] {
        if x >= inst.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: inst.n() });
        }
    }
    match inst.graph().distances_from(v)[u] {
        None => return Ok(S::zero()),
        Some(d) if d != radius => {
            return Err(Error::invalid(format!("vertex {u} is at distance {d} from {v}, not on the sphere of radius {radius}")))
        }
        _ => {}
    }
    if inst.clamp(u).is_some() || inst.clamp(v).is_some() {
        return Ok(S::zero());
    }
    let ball = inst.ball(v, radius);
    let vertices = ball.vertices();
    let local = |x: usize| vertices.binary_search(&x).expect("vertex in ball");
    let sub = inst.restrict(&vertices);
    let others: Vec<usize> =
        ball.boundary.iter().copied().filter(|&w| w != u && inst.clamp(w).is_none()).map(local).collect();
    if others.len() > cap {
        return Err(Error::SizeCap { what: "free boundary vertices", actual: others.len(), cap });
    }
    let configs: Vec<u64> = match mode {
        ExtremalMode::Exhaustive => (0..1u64 << others.len()).collect(),
        ExtremalMode::Extremal => vec![0, (1u64 << others.len()) - 1],
    };
    let (lv, lu) = (local(v), local(u));
    let mut best = S::zero();
    for bits in configs {
        let mut pins: Vec<(usize, Spin)> =
            others.iter().enumerate().map(|(i, &w)| (w, Spin::from_bool(bits >> i & 1 == 1))).collect();
        pins.push((lu, Spin::Plus));
        let plus = conditional_marginal_capped(&sub, lv, &pins, cap)?;
        *pins.last_mut().unwrap() = (lu, Spin::Minus);
        let minus = conditional_marginal_capped(&sub, lv, &pins, cap)?;
        best = best.max((plus - minus).abs());
    }
    Ok(best)
}
