use super::{Graph, RootedTree};

/// `B(v, R)` split into its interior `B(v, R-1)` and sphere `S(v, R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: usize,
    pub radius: usize,
    /// `B(v, R-1)`, ascending.
    pub interior: Vec<usize>,
    /// `S(v, R)`, ascending.
    pub boundary: Vec<usize>,
    /// BFS layers `S(v, 0), ..., S(v, R)`, each ascending.
    pub layers: Vec<Vec<usize>>,
    pub volume: usize,
    /// `|E(B)| - |B| + 1` for the induced subgraph on `B(v, R)`.
    pub tree_excess: usize,
}

impl Ball {
    pub fn new(graph: &Graph, center: usize, radius: usize) -> Self {
        let mut layers: Vec<Vec<usize>> = vec![vec![center]];
        let mut seen = vec![false; graph.n()];
        seen[center] = true;
        for _ in 0..radius {
            let mut next: Vec<usize> = Vec::new();
            for &u in layers.last().unwrap() {
                for &w in graph.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        let boundary = if layers.len() == radius + 1 { layers[radius].clone() } else { Vec::new() };
        let mut interior: Vec<usize> = layers.iter().take(radius).flatten().copied().collect();
        interior.sort_unstable();
        let volume = layers.iter().map(Vec::len).sum::<usize>();
        let internal_edges: usize = layers
            .iter()
            .flatten()
            .map(|&u| graph.neighbors(u).iter().filter(|&&w| seen[w] && w > u).count())
            .sum();
        Ball {
            center,
            radius,
            interior,
            boundary,
            layers,
            volume,
            tree_excess: internal_edges + 1 - volume,
        }
    }

    /// All vertices of `B(v, R)`, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.layers.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

/// Breadth-first spanning tree of a ball, in ball-local labels.
#[derive(Debug, Clone)]
pub struct BfsSpanningTree {
    pub tree: RootedTree,
    /// `labels[i]` is the original vertex of local vertex `i` (discovery order).
    pub labels: Vec<usize>,
    /// Edges of the induced ball subgraph not used by the tree.
    pub unexplored_edges: usize,
}

/// Explores `S(v,0), ..., S(v,R-1)` in ascending vertex order, attaching
/// every neighbor not yet in the tree.
pub fn spanning_tree_bfs(graph: &Graph, ball: &Ball) -> BfsSpanningTree {
    let mut local = vec![usize::MAX; graph.n()];
    let mut labels = vec![ball.center];
    local[ball.center] = 0;
    let mut parent: Vec<Option<usize>> = vec![None];
    let explore_layers = ball.layers.len().min(ball.radius);
    for layer in ball.layers.iter().take(explore_layers) {
        for &u in layer {
            for &w in graph.neighbors(u) {
                if local[w] == usize::MAX {
                    local[w] = labels.len();
                    labels.push(w);
                    parent.push(Some(local[u]));
                }
            }
        }
    }
    let tree = RootedTree::from_parents(parent).expect("BFS parents form a tree");
    let induced = graph.induced(&labels).m();
    BfsSpanningTree { unexplored_edges: induced - tree.graph.m(), tree, labels }
}
