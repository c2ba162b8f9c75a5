#![allow(dead_code)]

use glauber::graph::{Field, Graph, IsingInstance};
use rand::Rng;

/// Connected graph: random recursive tree plus extra edges with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    random_connected(n, 0.0, rng)
}

/// Random couplings in `[0, beta_max]`, fields in `[-h_max, h_max]`, and each
/// vertex clamped with probability `clamp_p`.
pub fn random_instance<R: Rng>(graph: &Graph, beta_max: f64, h_max: f64, clamp_p: f64, rng: &mut R) -> IsingInstance<f64> {
    let edges: Vec<(usize, usize, f64)> = graph.edges().map(|(u, v)| (u, v, rng.random::<f64>() * beta_max)).collect();
    let fields: Vec<(usize, Field<f64>)> = (0..graph.n())
        .map(|v| {
            let f = if rng.random::<f64>() < clamp_p {
                if rng.random::<bool>() {
                    Field::PlusInfinity
                } else {
                    Field::MinusInfinity
                }
            } else {
                Field::Finite((2.0 * rng.random::<f64>() - 1.0) * h_max)
            };
            (v, f)
        })
        .collect();
    IsingInstance::build(graph.n(), &edges, &fields).unwrap()
}
