use serde::Serialize;

use super::{Ball, Graph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Spin {
    Minus,
    Plus,
}

impl Spin {
    #[inline]
    pub fn sign(self) -> i8 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }

    #[inline]
    pub fn from_bool(plus: bool) -> Self {
        if plus {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }

    #[inline]
    pub fn is_plus(self) -> bool {
        self == Spin::Plus
    }

    pub fn flipped(self) -> Self {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }
}

/// External field on a vertex: finite, or a clamp (`±inf`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Field<S> {
    Finite(S),
    PlusInfinity,
    MinusInfinity,
}

impl<S: Scalar> Field<S> {
    pub fn clamp(&self) -> Option<Spin> {
        match self {
            Field::Finite(_) => None,
            Field::PlusInfinity => Some(Spin::Plus),
            Field::MinusInfinity => Some(Spin::Minus),
        }
    }

    pub fn finite(&self) -> Option<S> {
        match *self {
            Field::Finite(h) => Some(h),
            _ => None,
        }
    }

    pub fn pinned(spin: Spin) -> Self {
        match spin {
            Spin::Plus => Field::PlusInfinity,
            Spin::Minus => Field::MinusInfinity,
        }
    }

    /// Maps a float to a field, turning `±inf` into clamps.
    pub fn from_value(h: S) -> Self {
        if h == S::infinity() {
            Field::PlusInfinity
        } else if h == S::neg_infinity() {
            Field::MinusInfinity
        } else {
            Field::Finite(h)
        }
    }

    pub fn cast<T: Scalar>(&self) -> Field<T> {
        match *self {
            Field::Finite(h) => Field::Finite(T::lit(h.as_f64())),
            Field::PlusInfinity => Field::PlusInfinity,
            Field::MinusInfinity => Field::MinusInfinity,
        }
    }
}

/// Immutable ferromagnetic Ising model on a simple graph.
#[derive(Debug, Clone)]
pub struct IsingInstance<S> {
    graph: Graph,
    // couplings aligned with `graph.neighbors(v)`
    nbr_beta: Vec<Vec<S>>,
    fields: Vec<Field<S>>,
    beta_max: S,
}

impl<S: Scalar> IsingInstance<S> {
    /// Validates and builds an instance. Fields not listed default to zero.
    pub fn build(n: usize, edges: &[(usize, usize, S)], fields: &[(usize, Field<S>)]) -> Result<Self> {
        for &(u, v, beta) in edges {
            if !(beta >= S::zero()) || !beta.is_finite() {
                return Err(Error::AntiferromagneticCoupling { u, v, beta: beta.as_f64() });
            }
        }
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let graph = Graph::from_edges(n, &pairs)?;
        let mut nbr_beta: Vec<Vec<S>> =
            (0..n).map(|v| vec![S::zero(); graph.degree(v)]).collect();
        for &(u, v, beta) in edges {
            let iu = graph.neighbors(u).binary_search(&v).unwrap();
            let iv = graph.neighbors(v).binary_search(&u).unwrap();
            nbr_beta[u][iu] = beta;
            nbr_beta[v][iv] = beta;
        }
        let mut field_vec = vec![Field::Finite(S::zero()); n];
        let mut seen = vec![false; n];
        for &(v, h) in fields {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Err(Error::invalid(format!("field for vertex {v} given twice")));
            }
            if let Field::Finite(x) = h {
                if x.is_nan() {
                    return Err(Error::invalid(format!("field for vertex {v} is NaN")));
                }
            }
            seen[v] = true;
            field_vec[v] = h;
        }
        let beta_max = edges.iter().map(|e| e.2).fold(S::zero(), S::max);
        Ok(IsingInstance { graph, nbr_beta, fields: field_vec, beta_max })
    }

    /// Uniform coupling `beta` on every edge of `graph`, zero fields.
    pub fn uniform(graph: &Graph, beta: S) -> Result<Self> {
        let edges: Vec<(usize, usize, S)> = graph.edges().map(|(u, v)| (u, v, beta)).collect();
        Self::build(graph.n(), &edges, &[])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn field(&self, v: usize) -> Field<S> {
        self.fields[v]
    }

    pub fn fields(&self) -> &[Field<S>] {
        &self.fields
    }

    #[inline]
    pub fn clamp(&self, v: usize) -> Option<Spin> {
        self.fields[v].clamp()
    }

    #[inline]
    pub fn beta_max(&self) -> S {
        self.beta_max
    }

    /// `(neighbor, coupling)` pairs of `v`.
    #[inline]
    pub fn couplings(&self, v: usize) -> impl Iterator<Item = (usize, S)> + '_ {
        self.graph.neighbors(v).iter().copied().zip(self.nbr_beta[v].iter().copied())
    }

    pub fn coupling(&self, u: usize, v: usize) -> Option<S> {
        self.graph.neighbors(u).binary_search(&v).ok().map(|i| self.nbr_beta[u][i])
    }

    /// Edge list `(u, v, beta)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, S)> {
        self.graph.edges().map(|(u, v)| (u, v, self.coupling(u, v).unwrap())).collect()
    }

    /// Unclamped vertices in ascending order.
    pub fn free_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.clamp(v).is_none()).collect()
    }

    pub fn ball(&self, v: usize, radius: usize) -> Ball {
        Ball::new(&self.graph, v, radius)
    }

    /// Same model with the vertices in `pins` clamped. A pin that contradicts
    /// an existing clamp is an error (the event has probability zero).
    pub fn pinned(&self, pins: &[(usize, Spin)]) -> Result<Self> {
        let mut out = self.clone();
        for &(v, s) in pins {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
            match self.clamp(v) {
                Some(c) if c != s => return Err(Error::ZeroProbability(v)),
                _ => out.fields[v] = Field::pinned(s),
            }
        }
        Ok(out)
    }

    /// Model induced on `vertices` (relabelled `0..k` in the given order).
    /// Neighbors outside the set are dropped, so callers restricting to a
    /// ball should pin the ball's sphere first.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let graph = self.graph.induced(vertices);
        let nbr_beta = vertices
            .iter()
            .enumerate()
            .map(|(i, _)| {
                graph.neighbors(i).iter().map(|&j| self.coupling(vertices[i], vertices[j]).unwrap()).collect()
            })
            .collect();
        let fields: Vec<Field<S>> = vertices.iter().map(|&v| self.fields[v]).collect();
        let beta_max = graph
            .edges()
            .map(|(a, b)| self.coupling(vertices[a], vertices[b]).unwrap())
            .fold(S::zero(), S::max);
        IsingInstance { graph, nbr_beta, fields, beta_max }
    }

    /// Local field `h_v + sum_u beta_uv sigma_u` seen by a free vertex.
    #[inline]
    pub fn local_field(&self, v: usize, sign_of: impl Fn(usize) -> i8) -> S {
        let h = self.fields[v].finite().unwrap_or_else(S::zero);
        let nb = self.graph.neighbors(v);
        let betas = &self.nbr_beta[v];
        let mut acc = h;
        for (&u, &b) in nb.iter().zip(betas) {
            if sign_of(u) > 0 {
                acc = acc + b;
            } else {
                acc = acc - b;
            }
        }
        acc
    }

    /// Converts the scalar type.
    pub fn cast<T: Scalar>(&self) -> IsingInstance<T> {
        IsingInstance {
            graph: self.graph.clone(),
            nbr_beta: self
                .nbr_beta
                .iter()
                .map(|l| l.iter().map(|b| T::lit(b.as_f64())).collect())
                .collect(),
            fields: self.fields.iter().map(Field::cast).collect(),
            beta_max: T::lit(self.beta_max.as_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn builds_single_edge() {
        let inst = IsingInstance::build(2, &[(0, 1, 0.5f64)], &[]).unwrap();
        assert_eq!(inst.beta_max(), 0.5);
        assert_eq!(inst.coupling(1, 0), Some(0.5));
    }

    #[test]
    fn rejects_antiferromagnet() {
        let err = IsingInstance::build(2, &[(0, 1, -0.1f64)], &[]).unwrap_err();
        assert!(matches!(err, Error::AntiferromagneticCoupling { .. }));
        assert!(err.to_string().contains("antiferromagnetic coupling"));
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = IsingInstance::build(3, &[(0, 1, 1.0f64), (1, 0, 0.2)], &[]).unwrap_err();
        assert_eq!(err, Error::DuplicateEdge { u: 0, v: 1 });
    }

    #[test]
    fn clamped_vertex_is_frozen() {
        let edges: Vec<_> = cycle(4).edges().map(|(u, v)| (u, v, 1.0f64)).collect();
        let inst = IsingInstance::build(4, &edges, &[(0, Field::PlusInfinity)]).unwrap();
        assert_eq!(inst.clamp(0), Some(Spin::Plus));
        assert_eq!(inst.free_vertices(), vec![1, 2, 3]);
    }

    #[test]
    fn pin_against_clamp_is_zero_probability() {
        let inst = IsingInstance::build(2, &[(0, 1, 1.0f64)], &[(0, Field::MinusInfinity)]).unwrap();
        assert_eq!(inst.pinned(&[(0, Spin::Plus)]).unwrap_err(), Error::ZeroProbability(0));
        assert!(inst.pinned(&[(0, Spin::Minus)]).is_ok());
    }

    #[test]
    fn cast_preserves_values() {
        let inst = IsingInstance::build(2, &[(0, 1, 0.25f64)], &[(1, Field::Finite(-0.5))]).unwrap();
        let f: IsingInstance<f32> = inst.cast();
        assert_eq!(f.coupling(0, 1), Some(0.25f32));
        assert_eq!(f.field(1), Field::Finite(-0.5f32));
    }
}
