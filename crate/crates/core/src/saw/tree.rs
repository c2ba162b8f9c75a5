use crate::error::{Error, Result};
use crate::graph::{IsingInstance, Spin};
use crate::scalar::{logistic, Scalar};

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Ordinary node carrying the field of its vertex.
    Free,
    /// Leaf closing a cycle, fixed by the orientation rule.
    CycleLeaf(Spin),
    /// Vertex fixed by the conditioning or by an infinite field.
    Fixed(Spin),
    /// Free node at the depth limit whose subtree was cut off.
    Truncated,
}

#[derive(Debug, Clone)]
pub struct SawNode<S> {
    /// Vertex of `G` this node is a copy of.
    pub vertex: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Coupling on the edge to the parent (zero at the root).
    pub coupling: S,
    pub kind: NodeKind,
}

/// Nodes are stored in depth-first preorder, so every parent precedes its
/// children.
#[derive(Debug, Clone)]
pub struct SawTree<S> {
    pub root: usize,
    pub depth_limit: usize,
    pub nodes: Vec<SawNode<S>>,
    fields: Vec<S>,
}

impl<S: Scalar> SawTree<S> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The clamp set `A` with its spins.
    pub fn cycle_leaves(&self) -> Vec<(usize, Spin)> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n.kind {
                NodeKind::CycleLeaf(s) => Some((i, s)),
                _ => None,
            })
            .collect()
    }

    pub fn is_truncated(&self) -> bool {
        self.nodes.iter().any(|n| n.kind == NodeKind::Truncated)
    }

    /// Log-likelihood ratio `ln P(+)/P(-)` at the root, by the leaf-to-root
    /// recursion. Truncated nodes are treated as free leaves.
    pub fn root_llr(&self) -> S {
        let two = S::lit(2.0);
        let mut llr: Vec<S> = self
            .nodes
            .iter()
            .map(|n| match n.kind {
                NodeKind::Free | NodeKind::Truncated => two * self.fields[n.vertex],
                NodeKind::CycleLeaf(s) | NodeKind::Fixed(s) => spin_llr(s),
            })
            .collect();
        for i in (1..self.nodes.len()).rev() {
            let node = &self.nodes[i];
            let p = node.parent.expect("non-root node has a parent");
            let msg = edge_message(node.coupling, llr[i]);
            llr[p] = llr[p] + msg;
        }
        llr[0]
    }

    pub fn root_marginal(&self) -> S {
        logistic(self.root_llr())
    }
}

fn spin_llr<S: Scalar>(s: Spin) -> S {
    if s.is_plus() {
        S::infinity()
    } else {
        S::neg_infinity()
    }
}

/// `2 atanh(tanh(beta) tanh(l/2))`, written as
/// `ln cosh(beta + l/2) - ln cosh(beta - l/2)` so it stays finite when
/// `tanh` rounds to one.
pub(crate) fn edge_message<S: Scalar>(beta: S, l: S) -> S {
    if l == S::infinity() {
        return S::lit(2.0) * beta;
    }
    if l == S::neg_infinity() {
        return S::lit(-2.0) * beta;
    }
    let y = l / S::lit(2.0);
    ln_cosh(beta + y) - ln_cosh(beta - y)
}

fn ln_cosh<S: Scalar>(x: S) -> S {
    let a = x.abs();
    a + (S::lit(-2.0) * a).exp().ln_1p() - S::LN_2()
}

pub fn build_saw_tree<S: Scalar>(inst: &IsingInstance<S>, v: usize, depth: usize) -> Result<SawTree<S>> {
    build_saw_tree_capped(inst, v, depth, &[], DEFAULT_NODE_CAP)
}

/// SAW tree from `v` down to `depth` edges, with the vertices in `pins`
/// fixed (walks stop there).
pub fn build_saw_tree_capped<S: Scalar>(
    inst: &IsingInstance<S>,
    v: usize,
    depth: usize,
    pins: &[(usize, Spin)],
    cap: usize,
) -> Result<SawTree<S>> {
    if v >= inst.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: inst.n() });
    }
    if depth == 0 {
        return Err(Error::invalid("SAW tree depth must be at least 1"));
    }
    let mut fixed: Vec<Option<Spin>> = (0..inst.n()).map(|u| inst.clamp(u)).collect();
    for &(u, s) in pins {
        if u >= inst.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: inst.n() });
        }
        match fixed[u] {
            Some(c) if c != s => return Err(Error::ZeroProbability(u)),
            _ => fixed[u] = Some(s),
        }
    }
    let fields: Vec<S> = (0..inst.n()).map(|u| inst.field(u).finite().unwrap_or_else(S::zero)).collect();
    let mut builder = Builder {
        inst,
        fixed: &fixed,
        depth_limit: depth,
        cap,
        nodes: Vec::new(),
        walk: Vec::new(),
        on_walk: vec![usize::MAX; inst.n()],
    };
    builder.visit(v, None, S::zero())?;
    Ok(SawTree { root: v, depth_limit: depth, nodes: builder.nodes, fields })
}

struct Builder<'a, S> {
    inst: &'a IsingInstance<S>,
    fixed: &'a [Option<Spin>],
    depth_limit: usize,
    cap: usize,
    nodes: Vec<SawNode<S>>,
    walk: Vec<usize>,
    /// Position of a vertex on the current walk, or `usize::MAX`.
    on_walk: Vec<usize>,
}

impl<S: Scalar> Builder<'_, S> {
    fn push(&mut self, node: SawNode<S>) -> Result<usize> {
        if self.nodes.len() >= self.cap {
            return Err(Error::SizeCap { what: "SAW tree nodes", actual: self.nodes.len() + 1, cap: self.cap });
        }
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    fn visit(&mut self, u: usize, parent: Option<usize>, coupling: S) -> Result<()> {
        let depth = self.walk.len();
        if let Some(s) = self.fixed[u] {
            self.push(SawNode { vertex: u, parent, depth, coupling, kind: NodeKind::Fixed(s) })?;
            return Ok(());
        }
        let kind = if depth == self.depth_limit { NodeKind::Truncated } else { NodeKind::Free };
        let id = self.push(SawNode { vertex: u, parent, depth, coupling, kind })?;
        if kind == NodeKind::Truncated {
            return Ok(());
        }
        let from = self.walk.last().copied();
        self.on_walk[u] = depth;
        self.walk.push(u);
        let inst = self.inst;
        for (w, beta) in inst.couplings(u) {
            if Some(w) == from {
                continue;
            }
            let pos = self.on_walk[w];
            if pos != usize::MAX {
                // closing the cycle w -> walk[pos+1] -> ... -> u -> w
                let departed = self.walk[pos + 1];
                let spin = Spin::from_bool(u < departed);
                self.push(SawNode { vertex: w, parent: Some(id), depth: depth + 1, coupling: beta, kind: NodeKind::CycleLeaf(spin) })?;
            } else {
                self.visit(w, Some(id), beta)?;
            }
        }
        self.walk.pop();
        self.on_walk[u] = usize::MAX;
        Ok(())
    }
}

/// `P(sigma_v = + | sigma_Lambda = eta)` through the SAW tree. The tree is
/// built to depth `n`, which covers every self-avoiding walk.
pub fn saw_marginal<S: Scalar>(inst: &IsingInstance<S>, v: usize, pins: &[(usize, Spin)]) -> Result<S> {
    saw_marginal_capped(inst, v, pins, DEFAULT_NODE_CAP)
}

pub fn saw_marginal_capped<S: Scalar>(inst: &IsingInstance<S>, v: usize, pins: &[(usize, Spin)], cap: usize) -> Result<S> {
    if pins.iter().any(|&(u, _)| u == v) {
        return Err(Error::invalid(format!("vertex {v} is in the conditioning set")));
    }
    let tree = build_saw_tree_capped(inst, v, inst.n().max(1), pins, cap)?;
    Ok(tree.root_marginal())
}
