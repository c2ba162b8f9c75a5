//! Graphs, Ising instances and the structural statistics built on them.

mod ball;
mod format;
mod generators;
mod instance;

pub use ball::{spanning_tree_bfs, Ball, BfsSpanningTree};
pub use format::{parse_instance, write_instance, FORMAT_HEADER};
pub use generators::{
    complete, cycle, gen_erdos_renyi, gen_galton_watson_poisson, gen_random_regular, grid, path,
    star,
};
pub use instance::{Field, IsingInstance, Spin};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge { u: u.min(w[0]), v: u.max(w[0]) });
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Symmetry, simplicity, sortedness and the handshake identity.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        let mut degree_sum = 0;
        for (u, list) in self.adj.iter().enumerate() {
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v >= n || v == u || !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        degree_sum == 2 * self.m
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// A graph is a forest iff `m = n - #components`.
    pub fn is_forest(&self) -> bool {
        self.m + self.components() == self.n()
    }

    /// Subgraph induced by `vertices` (relabelled `0..k` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), &edges).expect("induced subgraph of a simple graph")
    }

    /// Maximum number of edges crossing any prefix cut of `order`.
    pub fn ordering_width(&self, order: &[usize]) -> usize {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut crossing: isize = 0;
        let mut best = 0;
        for (i, &v) in order.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] < i {
                    crossing -= 1;
                } else {
                    crossing += 1;
                }
            }
            best = best.max(crossing as usize);
        }
        best
    }
}

/// Rooted tree stored as a graph plus parent and depth arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub graph: Graph,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

impl RootedTree {
    /// Builds the tree from a parent array (root has `None`).
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::invalid(format!("expected exactly one root, found {}", roots.len())));
        }
        let edges: Vec<(usize, usize)> =
            (0..n).filter_map(|v| parent[v].map(|p| (p, v))).collect();
        let graph = Graph::from_edges(n, &edges)?;
        if !graph.is_connected() {
            return Err(Error::invalid("parent array does not describe a tree"));
        }
        let root = roots[0];
        let depth = graph.distances_from(root).into_iter().map(|d| d.unwrap()).collect();
        Ok(RootedTree { graph, root, parent, depth })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(v).iter().copied().filter(move |&w| self.parent[w] == Some(v))
    }
}
