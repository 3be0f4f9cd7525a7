//! Proper partial edge colorings, Kempe chains and the constructive König
//! coloring of bipartite graphs.
//!
//! Colors are `1..=k`. An [`EdgeColoring`] is proper at all times: it keeps
//! both the edge to color map and a vertex by color table of incident edges,
//! so a color class is a matching by construction and a Kempe swap costs
//! time proportional to the chain length.

use std::fmt;

use thiserror::Error;

use crate::graph::{bipartition, EdgeId, EdgeSubgraph, MultiGraph, Vertex};

pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("subgraph is not bipartite")]
    NotBipartite,
    #[error("vertex {vertex} has degree {degree} > k = {k}")]
    DegreeExceedsK { vertex: Vertex, degree: usize, k: usize },
    #[error("color {color} is outside 1..={k}")]
    ColorOutOfRange { color: Color, k: usize },
    #[error("color {color} already used at vertex {vertex}")]
    Conflict { vertex: Vertex, color: Color },
    #[error("edge {0} is already colored")]
    AlreadyColored(EdgeId),
    #[error("Kempe path does not match the current coloring")]
    StalePath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    k: usize,
    color: Vec<Option<Color>>,
    /// `at[v * k + (c - 1)]`: the edge of color `c` at `v`.
    at: Vec<Option<EdgeId>>,
    n: usize,
}

impl EdgeColoring {
    pub fn new(g: &MultiGraph, k: usize) -> Self {
        EdgeColoring {
            k,
            color: vec![None; g.m()],
            at: vec![None; g.n() * k],
            n: g.n(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn slot(&self, v: Vertex, c: Color) -> usize {
        v * self.k + (c - 1)
    }

    pub fn color_of(&self, e: EdgeId) -> Option<Color> {
        self.color.get(e).copied().flatten()
    }

    /// Edge-indexed assignment; `None` for uncolored edges.
    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.color
    }

    pub fn colored_count(&self) -> usize {
        self.color.iter().flatten().count()
    }

    pub fn edge_at(&self, v: Vertex, c: Color) -> Option<EdgeId> {
        if c == 0 || c > self.k || v >= self.n {
            return None;
        }
        self.at[self.slot(v, c)]
    }

    pub fn misses(&self, v: Vertex, c: Color) -> bool {
        self.edge_at(v, c).is_none()
    }

    /// Lowest color missing at `v`.
    pub fn lowest_free(&self, v: Vertex) -> Option<Color> {
        (1..=self.k).find(|&c| self.misses(v, c))
    }

    /// The color class `E_c` in ascending edge id order.
    pub fn class(&self, c: Color) -> Vec<EdgeId> {
        self.color
            .iter()
            .enumerate()
            .filter_map(|(e, &x)| (x == Some(c)).then_some(e))
            .collect()
    }

    pub fn assign(&mut self, g: &MultiGraph, e: EdgeId, c: Color) -> Result<(), ColorError> {
        if c == 0 || c > self.k {
            return Err(ColorError::ColorOutOfRange { color: c, k: self.k });
        }
        if self.color[e].is_some() {
            return Err(ColorError::AlreadyColored(e));
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if !self.misses(w, c) {
                return Err(ColorError::Conflict { vertex: w, color: c });
            }
        }
        self.color[e] = Some(c);
        let (su, sv) = (self.slot(u, c), self.slot(v, c));
        self.at[su] = Some(e);
        self.at[sv] = Some(e);
        Ok(())
    }

    pub fn unassign(&mut self, g: &MultiGraph, e: EdgeId) -> Option<Color> {
        let c = self.color[e].take()?;
        let (u, v) = g.endpoints(e);
        let (su, sv) = (self.slot(u, c), self.slot(v, c));
        self.at[su] = None;
        self.at[sv] = None;
        Some(c)
    }

    /// The set of colored edges as a subgraph.
    pub fn support(&self, g: &MultiGraph) -> EdgeSubgraph {
        EdgeSubgraph::from_ids(g, self.color.iter().enumerate().filter_map(|(e, c)| c.map(|_| e)))
            .expect("colored ids are in range")
    }

    /// Exchanges the two colors on the chain, in place.
    pub fn swap_in_place(&mut self, g: &MultiGraph, p: &KempePath) -> Result<(), ColorError> {
        if !self.matches(g, p) {
            return Err(ColorError::StalePath);
        }
        let old: Vec<Color> = p.edges.iter().map(|&e| self.unassign(g, e).unwrap()).collect();
        for (&e, c) in p.edges.iter().zip(old) {
            let flipped = if c == p.alpha { p.beta } else { p.alpha };
            self.assign(g, e, flipped)
                .expect("swapping a whole two-colored component keeps the coloring proper");
        }
        Ok(())
    }

    /// Whether `p` is still exactly the maximal chain through its edges.
    fn matches(&self, g: &MultiGraph, p: &KempePath) -> bool {
        if p.alpha == p.beta || p.alpha == 0 || p.beta == 0 || p.alpha > self.k || p.beta > self.k {
            return false;
        }
        if p.start >= self.n || p.vertices.len() != p.edges.len() + 1 {
            return false;
        }
        if p.edges.is_empty() {
            return self.misses(p.start, p.alpha) && self.misses(p.start, p.beta);
        }
        let first = p.color_at(self, 0);
        if first.is_none() {
            return false;
        }
        for (i, &e) in p.edges.iter().enumerate() {
            let Some(c) = self.color_of(e) else {
                return false;
            };
            let expected = if i % 2 == 0 { first } else { first.map(|f| p.other(f)) };
            if Some(c) != expected {
                return false;
            }
            let (a, b) = g.endpoints(e);
            let (x, y) = (p.vertices[i], p.vertices[i + 1]);
            if !((a, b) == (x, y) || (a, b) == (y, x)) {
                return false;
            }
        }
        let head = p.vertices[0];
        let tail = *p.vertices.last().unwrap();
        if p.is_cycle {
            return head == tail && p.edges.len().is_multiple_of(2);
        }
        let first_c = self.color_of(p.edges[0]).unwrap();
        let last_c = self.color_of(*p.edges.last().unwrap()).unwrap();
        self.misses(head, p.other(first_c)) && self.misses(tail, p.other(last_c))
    }
}

/// A maximal two-colored component through a vertex: either a path or an even
/// cycle. `vertices[i]` and `vertices[i + 1]` are the ends of `edges[i]`; for
/// a cycle the last vertex repeats the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempePath {
    pub alpha: Color,
    pub beta: Color,
    /// The vertex the chain was grown from.
    pub start: Vertex,
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<Vertex>,
    pub is_cycle: bool,
}

impl KempePath {
    fn other(&self, c: Color) -> Color {
        if c == self.alpha {
            self.beta
        } else {
            self.alpha
        }
    }

    fn color_at(&self, c: &EdgeColoring, i: usize) -> Option<Color> {
        c.color_of(self.edges[i]).filter(|&x| x == self.alpha || x == self.beta)
    }

    /// End vertices of a path; `None` for a cycle. The empty chain at `v`
    /// has endpoints `(v, v)`.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        if self.is_cycle {
            None
        } else {
            Some((self.vertices[0], *self.vertices.last().unwrap()))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The `alpha`/`beta` component containing `v`.
///
/// A path is returned from one end to the other. When `v` is interior, the
/// path starts at the end reached from `v` through its `beta` edge. A cycle
/// starts and ends at `v` and leaves through the `alpha` edge.
pub fn kempe_path(c: &EdgeColoring, g: &MultiGraph, v: Vertex, alpha: Color, beta: Color) -> KempePath {
    assert_ne!(alpha, beta, "Kempe chains need two distinct colors");
    let mut p = KempePath {
        alpha,
        beta,
        start: v,
        edges: Vec::new(),
        vertices: vec![v],
        is_cycle: false,
    };
    let walk = |first: Color| -> (Vec<EdgeId>, Vec<Vertex>, bool) {
        let mut edges = Vec::new();
        let mut verts = Vec::new();
        let mut at = v;
        let mut want = first;
        while let Some(e) = c.edge_at(at, want) {
            edges.push(e);
            at = g.other_end(e, at);
            verts.push(at);
            if at == v {
                return (edges, verts, true);
            }
            want = if want == alpha { beta } else { alpha };
        }
        (edges, verts, false)
    };
    let (ae, av, closed) = walk(alpha);
    if closed {
        p.edges = ae;
        p.vertices.extend(av);
        p.is_cycle = true;
        return p;
    }
    let (be, bv, _) = walk(beta);
    let mut edges: Vec<EdgeId> = be.into_iter().rev().collect();
    let mut vertices: Vec<Vertex> = bv.into_iter().rev().collect();
    vertices.push(v);
    edges.extend(ae);
    vertices.extend(av);
    p.edges = edges;
    p.vertices = vertices;
    p
}

/// A copy of `c` with `alpha` and `beta` exchanged along `p`.
pub fn kempe_swap(c: &EdgeColoring, g: &MultiGraph, p: &KempePath) -> Result<EdgeColoring, ColorError> {
    let mut out = c.clone();
    out.swap_in_place(g, p)?;
    Ok(out)
}

/// Colors every edge of `h` with at most `k` colors.
///
/// Edges are inserted in ascending id order. An edge takes the lowest color
/// free at both ends; otherwise, with `alpha` lowest free at `u` and `beta`
/// lowest free at `v`, the `beta`/`alpha` chain from `v` is flipped so that
/// `alpha` becomes free at `v` as well.
pub fn konig_color(g: &MultiGraph, h: &EdgeSubgraph, k: usize) -> Result<EdgeColoring, ColorError> {
    if let Some(vertex) = (0..g.n()).find(|&v| h.degree(v) > k) {
        return Err(ColorError::DegreeExceedsK {
            vertex,
            degree: h.degree(vertex),
            k,
        });
    }
    if !bipartition(&h.to_graph(g)).is_present() {
        return Err(ColorError::NotBipartite);
    }
    let mut c = EdgeColoring::new(g, k);
    for e in h.ids() {
        let (u, v) = g.endpoints(e);
        if let Some(col) = (1..=k).find(|&x| c.misses(u, x) && c.misses(v, x)) {
            c.assign(g, e, col)?;
            continue;
        }
        let alpha = c.lowest_free(u).expect("degree bound leaves a free color at u");
        let beta = c.lowest_free(v).expect("degree bound leaves a free color at v");
        let chain = kempe_path(&c, g, v, alpha, beta);
        assert!(
            !chain.vertices.contains(&u),
            "chain from v reached u: odd cycle in a bipartite subgraph"
        );
        c.swap_in_place(g, &chain)?;
        c.assign(g, e, alpha)?;
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Edge of the subgraph without a color.
    Uncolored(EdgeId),
    /// Edge outside the subgraph carrying a color.
    ColoredOutside(EdgeId),
    ColorOutOfRange {
        edge: EdgeId,
        color: Color,
    },
    /// Two or more edges of one color meet at the vertex.
    Conflict {
        vertex: Vertex,
        color: Color,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncolored(e) => write!(f, "edge {e} is uncolored"),
            Violation::ColoredOutside(e) => write!(f, "edge {e} is colored but not in the subgraph"),
            Violation::ColorOutOfRange { edge, color } => write!(f, "edge {edge} has color {color} out of range"),
            Violation::Conflict { vertex, color } => write!(f, "color {color} repeats at vertex {vertex}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColoringReport {
    pub violations: Vec<Violation>,
}

impl ColoringReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks from scratch that `colors` is a proper coloring of exactly the
/// edges of `h` using colors in `1..=k`.
pub fn verify_coloring(g: &MultiGraph, h: &EdgeSubgraph, colors: &[Option<Color>], k: usize) -> ColoringReport {
    let mut violations = Vec::new();
    let mut seen: std::collections::HashMap<(Vertex, Color), usize> = Default::default();
    for e in 0..g.m() {
        let c = colors.get(e).copied().flatten();
        match (h.contains(e), c) {
            (true, None) => violations.push(Violation::Uncolored(e)),
            (false, Some(_)) => violations.push(Violation::ColoredOutside(e)),
            _ => {}
        }
        let Some(c) = c else { continue };
        if c == 0 || c > k {
            violations.push(Violation::ColorOutOfRange { edge: e, color: c });
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            *seen.entry((w, c)).or_default() += 1;
        }
    }
    for e in g.m()..colors.len() {
        if colors[e].is_some() {
            violations.push(Violation::ColoredOutside(e));
        }
    }
    let mut conflicts: Vec<_> = seen
        .into_iter()
        .filter(|&(_, count)| count > 1)
        .map(|((vertex, color), _)| Violation::Conflict { vertex, color })
        .collect();
    conflicts.sort_by_key(|v| match *v {
        Violation::Conflict { vertex, color } => (vertex, color),
        _ => unreachable!(),
    });
    violations.extend(conflicts);
    ColoringReport { violations }
}
