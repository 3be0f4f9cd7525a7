//! Seeded random generators and named fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::edge_color::EdgeColoring;
use crate::graph::{EdgeSubgraph, MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
}

pub fn sample_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent seed for the `index`-th sample of a run seeded with `seed`.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.gen()
}

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> MultiGraph {
    MultiGraph::from_edges(n, edges).expect("generator produced a valid graph")
}

/// Union of `k` uniform random perfect matchings between `0..half_n` and
/// `half_n..2 * half_n`. Parallel edges are kept, so the result is
/// `k`-regular.
pub fn gen_regular_bipartite(half_n: usize, k: usize, seed: u64) -> MultiGraph {
    let mut rng = sample_rng(seed);
    let mut perm: Vec<usize> = (0..half_n).collect();
    let mut edges = Vec::with_capacity(half_n * k);
    for _ in 0..k {
        perm.shuffle(&mut rng);
        edges.extend(perm.iter().enumerate().map(|(u, &w)| (u, half_n + w)));
    }
    build(2 * half_n, &edges)
}

/// Each of `max_mult` potential copies of a pair is present with
/// probability `p`.
fn copies(rng: &mut ChaCha8Rng, p: f64, max_mult: usize) -> usize {
    (0..max_mult).filter(|_| rng.gen_bool(p.clamp(0.0, 1.0))).count()
}

fn random_bipartite_edges(
    rng: &mut ChaCha8Rng,
    nu: usize,
    nw: usize,
    p: f64,
    max_mult: usize,
) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for u in 0..nu {
        for w in nu..nu + nw {
            for _ in 0..copies(rng, p, max_mult) {
                edges.push((u, w));
            }
        }
    }
    edges
}

/// Sides `0..nu` and `nu..nu + nw`.
pub fn gen_random_bipartite(nu: usize, nw: usize, p: f64, max_mult: usize, seed: u64) -> MultiGraph {
    let mut rng = sample_rng(seed);
    build(nu + nw, &random_bipartite_edges(&mut rng, nu, nw, p, max_mult))
}

/// A random bipartite graph plus an apex vertex `nu + nw` joined to
/// `apex_degree` distinct base vertices, chosen uniformly from both sides.
/// Removing the apex leaves a bipartite graph.
pub fn gen_nearly_bipartite(
    nu: usize,
    nw: usize,
    p: f64,
    max_mult: usize,
    apex_degree: usize,
    seed: u64,
) -> MultiGraph {
    let mut rng = sample_rng(seed);
    let mut edges = random_bipartite_edges(&mut rng, nu, nw, p, max_mult);
    let base = nu + nw;
    let mut targets = rand::seq::index::sample(&mut rng, base, apex_degree.min(base)).into_vec();
    targets.sort_unstable();
    edges.extend(targets.into_iter().map(|v| (v, base)));
    build(base + 1, &edges)
}

pub fn gen_random_multigraph(n: usize, p: f64, max_mult: usize, seed: u64) -> MultiGraph {
    let mut rng = sample_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for _ in 0..copies(&mut rng, p, max_mult) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

fn cycle(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn complete(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn complete_bipartite(a: usize, b: usize) -> Vec<(Vertex, Vertex)> {
    (0..a).flat_map(|u| (a..a + b).map(move |w| (u, w))).collect()
}

fn petersen() -> Vec<(Vertex, Vertex)> {
    let mut e = cycle(5);
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    e
}

fn cube() -> Vec<(Vertex, Vertex)> {
    (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ 1 << b)))
        .filter(|&(u, v)| u < v)
        .collect()
}

/// Two vertices 0 and 1 joined by internally disjoint paths of the given
/// lengths. Paths of length one become parallel edges.
fn theta(lengths: &[usize]) -> (usize, Vec<(Vertex, Vertex)>) {
    let mut n = 2;
    let mut edges = Vec::new();
    for &len in lengths {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, 1));
    }
    (n, edges)
}

/// Triangles `a, b, c` and `d, e, f` joined by `cd`; vertices `a..f` are
/// `0..5` and edges are `ab, ac, bc, cd, de, df, ef`.
fn two_triangles() -> Vec<(Vertex, Vertex)> {
    vec![(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
}

/// The 2-edge-colorable subgraph drawn with the two-triangle fixture:
/// `ab:1, bc:2, cd:1, de:2, ef:1`. It has five edges, which is maximum,
/// yet `a c d f` is an augmenting path for it.
pub fn two_triangles_a2() -> (MultiGraph, EdgeSubgraph, EdgeColoring) {
    let g = build(6, &two_triangles());
    let mut c = EdgeColoring::new(&g, 2);
    for (e, col) in [(0, 1), (2, 2), (3, 1), (4, 2), (6, 1)] {
        c.assign(&g, e, col).expect("fixture coloring is proper");
    }
    let h = c.support(&g);
    (g, h, c)
}

fn params(name: &str, arg: &str) -> Result<Vec<usize>, GenError> {
    arg.split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<Vec<usize>, _>>()
        .map_err(|_| GenError::BadParams {
            name: name.to_string(),
            reason: format!("`{arg}` is not a comma separated list of integers"),
        })
}

fn bad(name: &str, reason: &str) -> GenError {
    GenError::BadParams {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

/// Names: `figure1` (alias `two-triangles`), `k33`, `k4`, `petersen`, `cube`, `cycle:<n>`,
/// `path:<n>` (n vertices), `star:<n>` (n leaves), `complete:<n>`,
/// `kbip:<a>,<b>`, `theta:<l1>,<l2>,...`.
pub fn gen_named(name: &str) -> Result<MultiGraph, GenError> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let one = |arg: Option<&str>| -> Result<usize, GenError> {
        let arg = arg.ok_or_else(|| bad(base, "missing size"))?;
        match params(base, arg)?[..] {
            [x] => Ok(x),
            _ => Err(bad(base, "expected one size")),
        }
    };
    let (n, edges) = match base {
        "figure1" | "two-triangles" => (6, two_triangles()),
        "k33" => (6, complete_bipartite(3, 3)),
        "k4" => (4, complete(4)),
        "petersen" => (10, petersen()),
        "cube" => (8, cube()),
        "cycle" => {
            let n = one(arg)?;
            if n < 3 {
                return Err(bad(base, "a loopless simple cycle needs n >= 3"));
            }
            (n, cycle(n))
        }
        "path" => {
            let n = one(arg)?;
            (n, (1..n).map(|i| (i - 1, i)).collect())
        }
        "star" => {
            let n = one(arg)?;
            (n + 1, (1..=n).map(|i| (0, i)).collect())
        }
        "complete" => {
            let n = one(arg)?;
            (n, complete(n))
        }
        "kbip" => {
            let arg = arg.ok_or_else(|| bad(base, "missing sizes"))?;
            match params(base, arg)?[..] {
                [a, b] => (a + b, complete_bipartite(a, b)),
                _ => return Err(bad(base, "expected two sizes")),
            }
        }
        "theta" => {
            let arg = arg.ok_or_else(|| bad(base, "missing path lengths"))?;
            let lengths = params(base, arg)?;
            if lengths.is_empty() || lengths.contains(&0) {
                return Err(bad(base, "path lengths must be positive"));
            }
            theta(&lengths)
        }
        _ => return Err(GenError::UnknownName(name.to_string())),
    };
    Ok(build(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartition, odd_cycle_transversal_number};

    #[test]
    fn regular_bipartite_is_regular() {
        for seed in 0..20 {
            let g = gen_regular_bipartite(3, 3, seed);
            assert!(g.is_regular(3));
            assert!(bipartition(&g).is_present());
        }
        let g = gen_regular_bipartite(1, 4, 5);
        assert_eq!(g.edges(), &[(0, 1); 4]);
        assert_eq!(gen_regular_bipartite(4, 2, 11), gen_regular_bipartite(4, 2, 11));
        assert_eq!(gen_regular_bipartite(0, 3, 1).n(), 0);
    }

    #[test]
    fn random_bipartite_extremes() {
        assert_eq!(gen_random_bipartite(3, 4, 0.0, 3, 1).m(), 0);
        let g = gen_random_bipartite(3, 4, 1.0, 1, 1);
        assert_eq!(g.edges(), complete_bipartite(3, 4).as_slice());
        let g = gen_random_bipartite(2, 2, 1.0, 3, 1);
        assert_eq!(g.m(), 12);
        for seed in 0..30 {
            assert!(bipartition(&gen_random_bipartite(3, 3, 0.5, 2, seed)).is_present());
        }
    }

    #[test]
    fn nearly_bipartite_has_b_at_most_one() {
        let mut odd = 0;
        for seed in 0..60 {
            let g = gen_nearly_bipartite(3, 3, 0.6, 2, 3, seed);
            let b = odd_cycle_transversal_number(&g, None).unwrap();
            assert!(b <= 1);
            odd += b;
            assert_eq!(g.degree(6), 3);
        }
        assert!(odd > 0);
    }

    #[test]
    fn sample_seeds_differ() {
        let s: Vec<u64> = (0..50).map(|i| sample_seed(3, i)).collect();
        let mut d = s.clone();
        d.sort_unstable();
        d.dedup();
        assert_eq!(d.len(), 50);
        assert_eq!(s[7], sample_seed(3, 7));
    }

    #[test]
    fn named_graphs() {
        let g = gen_named("figure1").unwrap();
        assert_eq!((g.n(), g.m()), (6, 7));
        assert_eq!(odd_cycle_transversal_number(&g, None), Ok(2));
        let g = gen_named("k33").unwrap();
        assert!(g.is_regular(3) && bipartition(&g).is_present() && g.m() == 9);
        let g = gen_named("cycle:5").unwrap();
        assert_eq!(odd_cycle_transversal_number(&g, None), Ok(1));
        let g = gen_named("petersen").unwrap();
        assert!(g.is_regular(3) && g.is_simple() && g.m() == 15);
        let g = gen_named("cube").unwrap();
        assert!(g.is_regular(3) && g.is_simple() && bipartition(&g).is_present());
        assert!(gen_named("k4").unwrap().is_regular(3));
        assert_eq!(gen_named("path:4").unwrap().m(), 3);
        assert_eq!(gen_named("star:4").unwrap().max_degree(), 4);
        assert_eq!(gen_named("complete:5").unwrap().m(), 10);
        assert_eq!(gen_named("kbip:2,5").unwrap().m(), 10);
        let g = gen_named("theta:1,1,1").unwrap();
        assert_eq!(g.edges(), &[(0, 1); 3]);
        let g = gen_named("theta:2,3,4").unwrap();
        assert_eq!((g.n(), g.m()), (8, 9));
        assert!(!g.is_regular(3) && g.degree(0) == 3 && g.degree(1) == 3);
        assert!(matches!(gen_named("dodecahedron"), Err(GenError::UnknownName(_))));
        assert!(matches!(gen_named("cycle:2"), Err(GenError::BadParams { .. })));
        assert!(matches!(gen_named("kbip:3"), Err(GenError::BadParams { .. })));
        assert!(matches!(gen_named("cycle"), Err(GenError::BadParams { .. })));
    }

    #[test]
    fn two_triangles_companion_fixture() {
        let (g, h, c) = two_triangles_a2();
        assert_eq!(h.ids().collect::<Vec<_>>(), vec![0, 2, 3, 4, 6]);
        assert!(crate::edge_color::verify_coloring(&g, &h, c.as_slice(), 2).is_valid());
    }
}
