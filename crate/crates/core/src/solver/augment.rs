use std::collections::VecDeque;

use thiserror::Error;

use super::{check_degree_bound, require_bipartite, SolveError};
use crate::graph::{EdgeId, EdgeSubgraph, MultiGraph, Side, Vertex};

/// A simple path of odd length whose edges alternate between outside and
/// inside a subgraph `A` (starting and ending outside), with both ends of
/// `A`-degree below `k`. Flipping membership along it grows `A` by one edge
/// and keeps every degree at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    pub edges: Vec<EdgeId>,
    /// `vertices[i]`, `vertices[i + 1]` are the ends of `edges[i]`.
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("augmenting paths need k >= 1")]
    ZeroColors,
    #[error("path has even length {0}")]
    EvenLength(usize),
    #[error("vertex list does not match the edge list")]
    Shape,
    #[error("edge {0} does not join the listed vertices")]
    NotIncident(EdgeId),
    #[error("vertex {0} repeats")]
    NotSimple(Vertex),
    #[error("edge {0} should lie outside the subgraph")]
    ExpectedOutside(EdgeId),
    #[error("edge {0} should lie inside the subgraph")]
    ExpectedInside(EdgeId),
    #[error("end vertex {vertex} already has degree {degree} in the subgraph")]
    SaturatedEnd { vertex: Vertex, degree: usize },
}

impl AugmentingPath {
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks every defining property against `a`.
    pub fn validate(&self, g: &MultiGraph, a: &EdgeSubgraph, k: usize) -> Result<(), PathError> {
        if k == 0 {
            return Err(PathError::ZeroColors);
        }
        let len = self.edges.len();
        if len.is_multiple_of(2) {
            return Err(PathError::EvenLength(len));
        }
        if self.vertices.len() != len + 1 || self.vertices.iter().any(|&v| v >= g.n()) {
            return Err(PathError::Shape);
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.vertices {
            if std::mem::replace(&mut seen[v], true) {
                return Err(PathError::NotSimple(v));
            }
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if e >= g.m() {
                return Err(PathError::NotIncident(e));
            }
            let (x, y) = g.endpoints(e);
            let (p, q) = (self.vertices[i], self.vertices[i + 1]);
            if !((x, y) == (p, q) || (x, y) == (q, p)) {
                return Err(PathError::NotIncident(e));
            }
            match (i % 2 == 0, a.contains(e)) {
                (true, true) => return Err(PathError::ExpectedOutside(e)),
                (false, false) => return Err(PathError::ExpectedInside(e)),
                _ => {}
            }
        }
        let (u, v) = self.endpoints();
        for end in [u, v] {
            if a.degree(end) + 1 > k {
                return Err(PathError::SaturatedEnd {
                    vertex: end,
                    degree: a.degree(end),
                });
            }
        }
        Ok(())
    }
}

/// Shortest augmenting path in the residual network of the flow encoding of
/// `a`, or `None` when `a` is maximum.
///
/// The residual network is searched implicitly: a breadth-first search
/// starts from every unsaturated `U` vertex, leaves `U` vertices through
/// non-member edges and `W` vertices through member edges, and stops at the
/// first unsaturated `W` vertex. Ties go to the lowest vertex and edge ids.
pub fn find_augmenting_path(g: &MultiGraph, a: &EdgeSubgraph, k: usize) -> Result<Option<AugmentingPath>, SolveError> {
    let sides = require_bipartite(g)?;
    check_degree_bound(a, k)?;
    if k == 0 {
        return Ok(None);
    }
    let n = g.n();
    let mut via: Vec<Option<(EdgeId, Vertex)>> = vec![None; n];
    let mut reached = vec![false; n];
    let mut queue = VecDeque::new();
    for u in 0..n {
        if sides[u] == Side::U && a.degree(u) < k {
            reached[u] = true;
            queue.push_back(u);
        }
    }
    while let Some(x) = queue.pop_front() {
        let leave_through_members = sides[x] == Side::W;
        for &(e, y) in g.incident(x) {
            if reached[y] || a.contains(e) != leave_through_members {
                continue;
            }
            reached[y] = true;
            via[y] = Some((e, x));
            if sides[y] == Side::W && a.degree(y) < k {
                let path = trace(&via, y);
                debug_assert_eq!(path.validate(g, a, k), Ok(()));
                return Ok(Some(path));
            }
            queue.push_back(y);
        }
    }
    Ok(None)
}

fn trace(via: &[Option<(EdgeId, Vertex)>], end: Vertex) -> AugmentingPath {
    let mut edges = Vec::new();
    let mut vertices = vec![end];
    let mut at = end;
    while let Some((e, prev)) = via[at] {
        edges.push(e);
        vertices.push(prev);
        at = prev;
    }
    edges.reverse();
    vertices.reverse();
    AugmentingPath { edges, vertices }
}

/// Depth-first enumeration of simple alternating paths; works on any graph.
///
/// On bipartite graphs a path exists exactly when `a` is not maximum. On
/// other graphs a path may exist for a maximum `a` as well, and flipping it
/// then yields a subgraph with degrees at most `k` that is not k-edge
/// colorable. Exponential in the worst case.
pub fn find_augmenting_path_exhaustive(g: &MultiGraph, a: &EdgeSubgraph, k: usize) -> Option<AugmentingPath> {
    if k == 0 {
        return None;
    }
    fn extend(g: &MultiGraph, a: &EdgeSubgraph, k: usize, on_path: &mut [bool], path: &mut AugmentingPath) -> bool {
        let at = *path.vertices.last().unwrap();
        let want_member = path.edges.len() % 2 == 1;
        for &(e, y) in g.incident(at) {
            if on_path[y] || a.contains(e) != want_member {
                continue;
            }
            path.edges.push(e);
            path.vertices.push(y);
            on_path[y] = true;
            if !want_member && a.degree(y) < k {
                return true;
            }
            if extend(g, a, k, on_path, path) {
                return true;
            }
            on_path[y] = false;
            path.edges.pop();
            path.vertices.pop();
        }
        false
    }
    let mut on_path = vec![false; g.n()];
    for start in (0..g.n()).filter(|&u| a.degree(u) < k) {
        let mut path = AugmentingPath {
            edges: Vec::new(),
            vertices: vec![start],
        };
        on_path[start] = true;
        if extend(g, a, k, &mut on_path, &mut path) {
            return Some(path);
        }
        on_path[start] = false;
    }
    None
}

/// Removes the even edges of `p` from `a` and adds the odd ones.
pub fn augment(g: &MultiGraph, a: &EdgeSubgraph, p: &AugmentingPath, k: usize) -> Result<EdgeSubgraph, PathError> {
    p.validate(g, a, k)?;
    let mut b = a.clone();
    for (i, &e) in p.edges.iter().enumerate() {
        if i % 2 == 0 {
            b.insert(g, e);
        } else {
            b.remove(g, e);
        }
    }
    debug_assert!(b.max_degree() <= k);
    Ok(b)
}
