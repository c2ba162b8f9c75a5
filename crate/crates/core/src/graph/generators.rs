use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::{Graph, RootedTree};
use crate::error::{Error, Result};
use crate::rng;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges).unwrap()
}

/// Star `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Graph::from_edges(k + 1, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// `rows x cols` grid, row-major labels.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).unwrap()
}

/// `G(n, d/n)`: every pair independently with probability `d/n`.
///
/// Pairs are visited with geometric skips, so the cost is proportional to
/// the number of edges rather than to `n^2`.
pub fn gen_erdos_renyi(n: usize, d: f64, seed: u64) -> Result<Graph> {
    if n == 0 || !(d > 0.0) || d > n as f64 {
        return Err(Error::invalid(format!("Erdos-Renyi requires 0 < d <= n (n = {n}, d = {d})")));
    }
    let p = d / n as f64;
    let mut edges = Vec::new();
    if p >= 1.0 {
        return Ok(super::complete(n));
    }
    let mut rng = rng::stream(seed, "erdos-renyi", 0);
    let log_q = (1.0 - p).ln();
    // pairs (v, w) with w < v in lexicographic order of (v, w)
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Uniform simple `d`-regular graph via the pairing model with rejection.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 || (d >= n && !(d == 0 && n > 0)) {
        return Err(Error::invalid(format!(
            "random regular graph requires n*d even and d < n (n = {n}, d = {d})"
        )));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    const MAX_ATTEMPTS: u64 = 1_000_000;
    'attempt: for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng::stream(seed, "random-regular", attempt);
        points.shuffle(&mut rng);
        let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u].contains(&v) {
                continue 'attempt;
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u.min(v), u.max(v)));
        }
        return Graph::from_edges(n, &edges);
    }
    Err(Error::invalid(format!("pairing model did not produce a simple graph for n = {n}, d = {d}")))
}

/// First `depth` generations of a Galton-Watson tree with `Poisson(d)`
/// offspring. Vertices are labelled in breadth-first order, root 0.
pub fn gen_galton_watson_poisson(d: f64, depth: usize, seed: u64) -> Result<RootedTree> {
    if !(d > 0.0) {
        return Err(Error::invalid(format!("Galton-Watson mean must be positive (d = {d})")));
    }
    let offspring = Poisson::new(d).map_err(|e| Error::invalid(e.to_string()))?;
    let mut rng = rng::stream(seed, "galton-watson", 0);
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &u in &frontier {
            let k = offspring.sample(&mut rng) as usize;
            for _ in 0..k {
                next.push(parent.len());
                parent.push(Some(u));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    RootedTree::from_parents(parent)
}
