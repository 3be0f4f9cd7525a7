//! Canonical labels of small simple graphs, used to share spectra between
//! isomorphic graphs during exhaustive sweeps.

use crate::graph::MultiGraph;

/// Largest vertex count with a canonical key (the upper triangle must fit in
/// 64 bits).
pub const CANON_MAX_N: usize = 11;

/// `(n, code)` identical for isomorphic simple graphs and different for
/// non-isomorphic ones; `None` for multigraphs and graphs over
/// [`CANON_MAX_N`] vertices.
///
/// Vertices are first ordered by an invariant (degree, then the sum of
/// neighbor degrees). The code is the smallest upper-triangle bit string over
/// all relabelings that respect that order.
pub fn canonical_key(g: &MultiGraph) -> Option<(usize, u64)> {
    let n = g.n();
    if n > CANON_MAX_N || !g.is_simple() {
        return None;
    }
    let mut adj = vec![0u16; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let invariant: Vec<(u32, u32)> = (0..n)
        .map(|v| {
            let nsum = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| deg[w]).sum();
            (deg[v], nsum)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(invariant[v]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if invariant[cell[0]] == invariant[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut labeling = Vec::with_capacity(n);
    permute_cells(&cells, 0, &mut labeling, &mut |lab| {
        let code = encode(&adj, lab);
        best = best.min(code);
    });
    Some((n, best))
}

/// `lab[i]` is the original vertex placed at position `i`.
fn encode(adj: &[u16], lab: &[usize]) -> u64 {
    let n = lab.len();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = code << 1 | u64::from(adj[lab[i]] >> lab[j] & 1);
        }
    }
    code
}

fn permute_cells(cells: &[Vec<usize>], at: usize, lab: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if at == cells.len() {
        visit(lab);
        return;
    }
    let mut cell = cells[at].clone();
    let len = cell.len();
    heap_permutations(&mut cell, len, &mut |perm| {
        let mark = lab.len();
        lab.extend_from_slice(perm);
        permute_cells(cells, at + 1, lab, visit);
        lab.truncate(mark);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn relabel(g: &MultiGraph, perm: &[usize]) -> MultiGraph {
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        MultiGraph::from_edges(g.n(), &edges).unwrap()
    }

    #[test]
    fn invariant_under_relabeling() {
        let g = MultiGraph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
        let key = canonical_key(&g).unwrap();
        for perm in [[5, 4, 3, 2, 1, 0], [1, 3, 5, 0, 2, 4], [2, 0, 1, 4, 5, 3]] {
            assert_eq!(canonical_key(&relabel(&g, &perm)).unwrap(), key);
        }
    }

    #[test]
    fn counts_isomorphism_classes() {
        // Non-isomorphic graphs on 1..=5 vertices: 1, 2, 4, 11, 34.
        for (n, classes) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let mut keys = HashSet::new();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                keys.insert(canonical_key(&MultiGraph::from_edges(n, &edges).unwrap()).unwrap());
            }
            assert_eq!(keys.len(), classes, "n = {n}");
        }
    }

    #[test]
    fn multigraphs_have_no_key() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(canonical_key(&g), None);
    }
}
