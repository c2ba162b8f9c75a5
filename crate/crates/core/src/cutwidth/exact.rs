use super::{CutwidthKind, CutwidthResult};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CUTWIDTH_CAP: usize = 20;

pub fn cutwidth_exact(graph: &Graph) -> Result<CutwidthResult> {
    cutwidth_exact_capped(graph, DEFAULT_CUTWIDTH_CAP)
}

/// Dynamic program over vertex subsets: `f(S)` is the best width of an
/// ordering whose first `|S|` vertices are `S`, and
/// `f(S) = max(cut(S), min_{v in S} f(S - v))`.
pub fn cutwidth_exact_capped(graph: &Graph, cap: usize) -> Result<CutwidthResult> {
    let n = graph.n();
    if n > cap.min(30) {
        return Err(Error::SizeCap { what: "vertices for exact cut-width", actual: n, cap: cap.min(30) });
    }
    if n == 0 {
        return Ok(CutwidthResult { value: 0, ordering: Vec::new(), kind: CutwidthKind::Exact });
    }
    let nbr: Vec<u32> = (0..n).map(|v| graph.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let full = (1usize << n) - 1;
    let mut cut = vec![0u16; full + 1];
    let mut best = vec![0u16; full + 1];
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let inside = (nbr[v] & rest as u32).count_ones() as i32;
        cut[s] = (cut[rest] as i32 + graph.degree(v) as i32 - 2 * inside) as u16;
        let mut m = u16::MAX;
        let mut bits = s;
        while bits != 0 {
            let u = bits.trailing_zeros();
            bits &= bits - 1;
            m = m.min(best[s & !(1 << u)]);
        }
        best[s] = cut[s].max(m);
    }
    // peel off the last vertex repeatedly, smallest index first on ties
    let mut ordering = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = best[s];
        let v = (0..n).find(|&v| s >> v & 1 == 1 && cut[s].max(best[s & !(1 << v)]) == target).expect("optimal predecessor");
        ordering.push(v);
        s &= !(1 << v);
    }
    ordering.reverse();
    Ok(CutwidthResult { value: best[full] as usize, ordering, kind: CutwidthKind::Exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};

    #[test]
    fn small_families() {
        assert_eq!(cutwidth_exact(&path(6)).unwrap().value, 1);
        assert_eq!(cutwidth_exact(&star(4)).unwrap().value, 2);
        assert_eq!(cutwidth_exact(&complete(4)).unwrap().value, 4);
        assert_eq!(cutwidth_exact(&cycle(5)).unwrap().value, 2);
        assert_eq!(cutwidth_exact(&Graph::empty(3)).unwrap().value, 0);
    }

    #[test]
    fn witness_achieves_value() {
        let g = complete(5);
        let r = cutwidth_exact(&g).unwrap();
        assert_eq!(g.ordering_width(&r.ordering), r.value);
        assert_eq!(r.value, 6);
    }

    #[test]
    fn cap() {
        assert!(cutwidth_exact_capped(&path(6), 5).unwrap_err().is_size_cap());
    }
}
