use super::{CutwidthKind, CutwidthResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree};

/// Root first, then each subtree's ordering, subtrees taken in ascending
/// order of their bounds (ties by child index). With subtree bounds
/// `b_(1) <= ... <= b_(k)` the bound is `max_j b_(j) + k + 1 - j`, and `0` for
/// a single vertex; this order gives the largest bound the smallest offset.
pub fn tree_cutwidth_ordering(tree: &RootedTree) -> CutwidthResult {
    let (value, ordering) = bound_and_order(tree.n(), tree.root, |v| tree.children(v).collect());
    CutwidthResult { value, ordering, kind: CutwidthKind::TreeBound }
}

/// Same bound for a forest given as a plain graph: each component is rooted
/// at its smallest vertex and the component orderings are concatenated.
pub fn tree_cutwidth_ordering_graph(graph: &Graph) -> Result<CutwidthResult> {
    if !graph.is_forest() {
        return Err(Error::invalid("tree cut-width bound needs an acyclic graph"));
    }
    let n = graph.n();
    let mut parent = vec![usize::MAX; n];
    let mut value = 0;
    let mut ordering = Vec::with_capacity(n);
    for root in 0..n {
        if parent[root] != usize::MAX {
            continue;
        }
        parent[root] = root;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in graph.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let (b, order) = bound_and_order(n, root, |v| {
            graph.neighbors(v).iter().copied().filter(|&w| w != root && parent[w] == v && w != parent[v]).collect()
        });
        value = value.max(b);
        ordering.extend(order);
    }
    Ok(CutwidthResult { value, ordering, kind: CutwidthKind::TreeBound })
}

fn bound_and_order(n: usize, root: usize, children: impl Fn(usize) -> Vec<usize>) -> (usize, Vec<usize>) {
    // breadth-first order, so children come after parents
    let mut order = vec![root];
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        kids[v] = children(v);
        order.extend_from_slice(&kids[v]);
        i += 1;
    }
    let mut bound = vec![0usize; n];
    for &v in order.iter().rev() {
        let ks = &mut kids[v];
        ks.sort_by_key(|&c| (bound[c], c));
        let k = ks.len();
        bound[v] = ks.iter().enumerate().map(|(j, &c)| bound[c] + k - j).max().unwrap_or(0);
    }
    let mut ordering = Vec::with_capacity(order.len());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        ordering.push(v);
        stack.extend(kids[v].iter().rev());
    }
    (bound[root], ordering)
}
