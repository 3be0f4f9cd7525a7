//! Loopless undirected multigraphs with stable edge identities.
//!
//! Vertices are the dense integers `0..n`. Every edge gets an id equal to its
//! insertion position, so parallel edges stay distinguishable and every
//! algorithm in this crate speaks in edge ids rather than vertex pairs.

use std::collections::VecDeque;

use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}; graphs are loopless")]
    Loop { edge: EdgeId, vertex: Vertex },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge} out of range (m = {m})")]
    EdgeOutOfRange { edge: EdgeId, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(EdgeId, Vertex)>>,
}

impl MultiGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph whose edge ids follow the order of `edges`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::empty(n);
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge: id, vertex: u });
            }
            g.adj[u].push((id, v));
            g.adj[v].push((id, u));
            g.edges.push((u, v));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Incident `(edge id, neighbor)` pairs, in ascending edge id order.
    pub fn incident(&self, v: Vertex) -> &[(EdgeId, Vertex)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|a| a.len() == d)
    }

    /// No parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.m());
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Largest number of parallel edges between any vertex pair.
    pub fn max_multiplicity(&self) -> usize {
        let mut count = std::collections::HashMap::new();
        for &(u, v) in &self.edges {
            *count.entry((u.min(v), u.max(v))).or_insert(0usize) += 1;
        }
        count.values().copied().max().unwrap_or(0)
    }

    /// Removes `v` and its incident edges. Surviving vertices and edges keep
    /// their relative order.
    pub fn delete_vertex(&self, v: Vertex) -> Result<(MultiGraph, IdMap), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let vertices: Vec<Option<Vertex>> = (0..self.n)
            .map(|w| match w.cmp(&v) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(w - 1),
            })
            .collect();
        Ok(self.restrict(vertices, |_| true))
    }

    pub fn delete_edge(&self, e: EdgeId) -> Result<(MultiGraph, IdMap), GraphError> {
        if e >= self.m() {
            return Err(GraphError::EdgeOutOfRange { edge: e, m: self.m() });
        }
        Ok(self.restrict((0..self.n).map(Some).collect(), |id| id != e))
    }

    /// Appends an edge, returning a new graph; the new edge gets id `m`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<MultiGraph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        MultiGraph::from_edges(self.n, &edges)
    }

    fn restrict(&self, vertices: Vec<Option<Vertex>>, keep: impl Fn(EdgeId) -> bool) -> (MultiGraph, IdMap) {
        let n = vertices.iter().flatten().count();
        let mut kept = Vec::new();
        let mut edges = vec![None; self.m()];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if !keep(id) {
                continue;
            }
            if let (Some(a), Some(b)) = (vertices[u], vertices[v]) {
                edges[id] = Some(kept.len());
                kept.push((a, b));
            }
        }
        let g = MultiGraph::from_edges(n, &kept).expect("restriction of a valid graph");
        (g, IdMap { vertices, edges })
    }
}

/// Translation from the ids of a graph to the ids of a graph derived from it
/// by deletion. `None` marks deleted items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    pub vertices: Vec<Option<Vertex>>,
    pub edges: Vec<Option<EdgeId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    U,
    W,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::U => Side::W,
            Side::W => Side::U,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Present(Vec<Side>),
    /// Closed walk `w[0], w[1], .., w[L-1], w[0]` of odd length `L`.
    Absent {
        witness: Vec<Vertex>,
    },
}

impl Bipartition {
    pub fn is_present(&self) -> bool {
        matches!(self, Bipartition::Present(_))
    }

    pub fn sides(&self) -> Option<&[Side]> {
        match self {
            Bipartition::Present(s) => Some(s),
            Bipartition::Absent { .. } => None,
        }
    }
}

/// BFS 2-coloring. Components are rooted at their smallest vertex, which is
/// placed on side `U`.
pub fn bipartition(g: &MultiGraph) -> Bipartition {
    let n = g.n();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::U);
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].unwrap();
            for &(_, y) in g.incident(x) {
                match side[y] {
                    None => {
                        side[y] = Some(sx.flip());
                        parent[y] = x;
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => {
                        return Bipartition::Absent {
                            witness: odd_walk(&parent, x, y),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartition::Present(side.into_iter().map(Option::unwrap).collect())
}

/// Tree paths from `x` and `y` to their root, joined by the edge `xy`. Both
/// ends sit at the same BFS depth parity, so the walk is odd.
fn odd_walk(parent: &[usize], x: Vertex, y: Vertex) -> Vec<Vertex> {
    let to_root = |mut v: Vertex| {
        let mut path = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let mut walk = to_root(x);
    let mut back = to_root(y);
    back.pop();
    back.reverse();
    walk.extend(back);
    walk
}

/// Checks that `walk` is a closed walk of odd length in `g`.
pub fn is_odd_closed_walk(g: &MultiGraph, walk: &[Vertex]) -> bool {
    let len = walk.len();
    len % 2 == 1
        && (0..len).all(|i| {
            let (a, b) = (walk[i], walk[(i + 1) % len]);
            a < g.n() && g.incident(a).iter().any(|&(_, w)| w == b)
        })
}

/// Bipartiteness of `g` with the vertices in the bitmask `removed` deleted.
pub(crate) fn is_bipartite_without(g: &MultiGraph, removed: u64) -> bool {
    let n = g.n();
    let mut side = vec![0u8; n];
    let mut stack = Vec::new();
    for root in 0..n {
        if side[root] != 0 || removed >> root & 1 == 1 {
            continue;
        }
        side[root] = 1;
        stack.push(root);
        while let Some(x) = stack.pop() {
            for &(_, y) in g.incident(x) {
                if removed >> y & 1 == 1 {
                    continue;
                }
                if side[y] == 0 {
                    side[y] = 3 - side[x];
                    stack.push(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("odd cycle transversal number exceeds {cap}")]
pub struct CapExceeded {
    pub cap: usize,
}

/// Largest vertex count accepted by [`odd_cycle_transversal_number`].
pub const TRANSVERSAL_MAX_N: usize = 64;

/// `b(G)`: the fewest vertices whose deletion leaves a bipartite graph.
/// Exhaustive over vertex subsets in increasing size.
///
/// # Panics
/// If `g` has more than [`TRANSVERSAL_MAX_N`] vertices.
pub fn odd_cycle_transversal_number(g: &MultiGraph, cap: Option<usize>) -> Result<usize, CapExceeded> {
    let n = g.n();
    assert!(n <= TRANSVERSAL_MAX_N, "transversal search supports n <= 64");
    for size in 0..=n {
        if let Some(cap) = cap {
            if size > cap {
                return Err(CapExceeded { cap });
            }
        }
        let mut found = false;
        for_each_subset(n, size, &mut |mask| {
            if is_bipartite_without(g, mask) {
                found = true;
            }
            found
        });
        if found {
            return Ok(size);
        }
    }
    unreachable!("deleting every vertex leaves a bipartite graph")
}

/// Visits every `size`-subset of `0..n` as a bitmask until `visit` returns true.
fn for_each_subset(n: usize, size: usize, visit: &mut impl FnMut(u64) -> bool) {
    fn go(start: usize, n: usize, left: usize, mask: u64, visit: &mut impl FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return visit(mask);
        }
        for v in start..=n - left {
            if go(v + 1, n, left - 1, mask | 1 << v, visit) {
                return true;
            }
        }
        false
    }
    go(0, n, size, 0, visit);
}

/// A set of edge ids of a host graph with per-vertex degrees. The host is not
/// stored; callers pass it to the mutating methods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubgraph {
    member: Vec<bool>,
    deg: Vec<usize>,
    len: usize,
}

impl EdgeSubgraph {
    pub fn empty(host: &MultiGraph) -> Self {
        EdgeSubgraph {
            member: vec![false; host.m()],
            deg: vec![0; host.n()],
            len: 0,
        }
    }

    pub fn full(host: &MultiGraph) -> Self {
        EdgeSubgraph {
            member: vec![true; host.m()],
            deg: host.degrees(),
            len: host.m(),
        }
    }

    pub fn from_ids(host: &MultiGraph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self, GraphError> {
        let mut h = EdgeSubgraph::empty(host);
        for e in ids {
            if e >= host.m() {
                return Err(GraphError::EdgeOutOfRange { edge: e, m: host.m() });
            }
            h.insert(host, e);
        }
        Ok(h)
    }

    /// Returns false if `e` was already a member.
    pub fn insert(&mut self, host: &MultiGraph, e: EdgeId) -> bool {
        if self.member[e] {
            return false;
        }
        self.member[e] = true;
        let (u, v) = host.endpoints(e);
        self.deg[u] += 1;
        self.deg[v] += 1;
        self.len += 1;
        true
    }

    pub fn remove(&mut self, host: &MultiGraph, e: EdgeId) -> bool {
        if !self.member[e] {
            return false;
        }
        self.member[e] = false;
        let (u, v) = host.endpoints(e);
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        self.len -= 1;
        true
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.member.get(e).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    /// Member ids in ascending order.
    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.member.iter().enumerate().filter_map(|(e, &m)| m.then_some(e))
    }

    /// The member edges as a standalone graph on the host's vertex set.
    /// Edge `i` of the result is the `i`-th member in ascending id order.
    pub fn to_graph(&self, host: &MultiGraph) -> MultiGraph {
        let edges: Vec<_> = self.ids().map(|e| host.endpoints(e)).collect();
        MultiGraph::from_edges(host.n(), &edges).expect("subgraph of a valid graph")
    }

    /// Recomputes degrees from membership and compares.
    pub fn is_consistent(&self, host: &MultiGraph) -> bool {
        let mut deg = vec![0; host.n()];
        for e in self.ids() {
            let (u, v) = host.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        self.member.len() == host.m() && deg == self.deg && self.ids().count() == self.len
    }
}
