//! Maximum k-edge-colorable subgraphs.
//!
//! Three independent routes compute `nu_k(G)`:
//! - [`solve_augmenting`]: greedy start, then augmenting paths until none is
//!   left (bipartite graphs only),
//! - [`solve_flow`]: integral max flow on the degree-constrained subgraph
//!   network (bipartite graphs only),
//! - [`nu_oracle`]: branch and bound over color-or-skip decisions per edge
//!   (any loopless multigraph, small instances).
//!
//! On bipartite graphs a subgraph is k-edge-colorable exactly when its
//! maximum degree is at most `k`, so the first two routes optimize degree
//! constrained subgraphs and color the result with [`konig_color`].

mod augment;
pub mod flow;
mod oracle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edge_color::{konig_color, ColorError, EdgeColoring};
use crate::graph::{bipartition, Bipartition, EdgeId, EdgeSubgraph, MultiGraph, Side, Vertex};

pub use augment::{augment, find_augmenting_path, find_augmenting_path_exhaustive, AugmentingPath, PathError};
pub use oracle::{nu_oracle, ORACLE_MAX_COLORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Augmenting,
    Flow,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Augmenting, Method::Flow, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Augmenting => "augmenting",
            Method::Flow => "flow",
            Method::Oracle => "oracle",
        }
    }

    pub fn requires_bipartite(self) -> bool {
        !matches!(self, Method::Oracle)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "augment" | "augmenting" => Ok(Method::Augmenting),
            "flow" => Ok(Method::Flow),
            "oracle" => Ok(Method::Oracle),
            _ => Err(format!("unknown method `{s}` (expected augment, flow or oracle)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not bipartite (odd closed walk through {witness:?}); use the oracle method")]
    NotBipartite { witness: Vec<Vertex> },
    #[error("subgraph has vertex {vertex} of degree {degree} > k = {k}")]
    DegreeExceedsK { vertex: Vertex, degree: usize, k: usize },
    #[error("invalid augmenting path: {0}")]
    InvalidPath(#[from] PathError),
    #[error("instance too large for the oracle: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Color(#[from] ColorError),
}

/// Counters describing how a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolveStats {
    /// Size of the greedy starting subgraph (augmenting method).
    pub greedy_size: usize,
    /// Augmenting paths applied after the greedy start.
    pub augmentations: usize,
    /// Value of the integral max flow (flow method).
    pub flow_value: usize,
    /// Search nodes visited (oracle method).
    pub nodes: u64,
    /// False when the oracle ran out of budget; `nu` is then only a lower bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub k: usize,
    pub nu: usize,
    pub subgraph: EdgeSubgraph,
    pub coloring: EdgeColoring,
    pub method: Method,
    pub stats: SolveStats,
}

/// Dispatches to one of the three methods. `budget` bounds oracle nodes.
pub fn solve(g: &MultiGraph, k: usize, method: Method, budget: Option<u64>) -> Result<SolveResult, SolveError> {
    match method {
        Method::Augmenting => solve_augmenting(g, k),
        Method::Flow => solve_flow(g, k),
        Method::Oracle => nu_oracle(g, k, budget),
    }
}

/// Scans edges by ascending id and keeps an edge when both ends still have
/// degree below `k`. Maximal, not necessarily maximum.
pub fn greedy_initial(g: &MultiGraph, k: usize) -> EdgeSubgraph {
    let mut h = EdgeSubgraph::empty(g);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if h.degree(u) < k && h.degree(v) < k {
            h.insert(g, e);
        }
    }
    h
}

pub(crate) fn require_bipartite(g: &MultiGraph) -> Result<Vec<Side>, SolveError> {
    match bipartition(g) {
        Bipartition::Present(sides) => Ok(sides),
        Bipartition::Absent { witness } => Err(SolveError::NotBipartite { witness }),
    }
}

pub(crate) fn check_degree_bound(h: &EdgeSubgraph, k: usize) -> Result<(), SolveError> {
    match h.degrees().iter().position(|&d| d > k) {
        Some(vertex) => Err(SolveError::DegreeExceedsK {
            vertex,
            degree: h.degree(vertex),
            k,
        }),
        None => Ok(()),
    }
}

/// `k = 0` and `k >= Delta(G)` need no search on bipartite graphs.
fn trivial_bipartite(g: &MultiGraph, k: usize, method: Method) -> Result<Option<SolveResult>, SolveError> {
    let h = if k == 0 {
        EdgeSubgraph::empty(g)
    } else if k >= g.max_degree() {
        EdgeSubgraph::full(g)
    } else {
        return Ok(None);
    };
    let coloring = konig_color(g, &h, k)?;
    let nu = h.len();
    let stats = SolveStats {
        greedy_size: if method == Method::Augmenting { nu } else { 0 },
        flow_value: if method == Method::Flow { nu } else { 0 },
        exact: true,
        ..SolveStats::default()
    };
    Ok(Some(SolveResult {
        k,
        nu,
        subgraph: h,
        coloring,
        method,
        stats,
    }))
}

/// Greedy start followed by augmenting paths until none exists.
pub fn solve_augmenting(g: &MultiGraph, k: usize) -> Result<SolveResult, SolveError> {
    require_bipartite(g)?;
    if let Some(r) = trivial_bipartite(g, k, Method::Augmenting)? {
        return Ok(r);
    }
    let mut h = greedy_initial(g, k);
    let greedy_size = h.len();
    let mut augmentations = 0;
    while let Some(p) = find_augmenting_path(g, &h, k)? {
        h = augment(g, &h, &p, k)?;
        augmentations += 1;
    }
    let coloring = konig_color(g, &h, k)?;
    Ok(SolveResult {
        k,
        nu: h.len(),
        subgraph: h,
        coloring,
        method: Method::Augmenting,
        stats: SolveStats {
            greedy_size,
            augmentations,
            exact: true,
            ..SolveStats::default()
        },
    })
}

/// Max flow from a source through the `U` side, one unit arc per edge, and
/// the `W` side into a sink, with vertex capacities `min(k, deg)`.
pub fn solve_flow(g: &MultiGraph, k: usize) -> Result<SolveResult, SolveError> {
    let sides = require_bipartite(g)?;
    if let Some(r) = trivial_bipartite(g, k, Method::Flow)? {
        return Ok(r);
    }
    let n = g.n();
    let (source, sink) = (n, n + 1);
    let mut net = flow::FlowNetwork::new(n + 2);
    for v in 0..n {
        let cap = k.min(g.degree(v)) as u64;
        match sides[v] {
            Side::U => net.add_arc(source, v, cap),
            Side::W => net.add_arc(v, sink, cap),
        };
    }
    let middle: Vec<(EdgeId, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            let (u, w) = if sides[a] == Side::U { (a, b) } else { (b, a) };
            (e, net.add_arc(u, w, 1))
        })
        .collect();
    let value = net.max_flow(source, sink) as usize;
    let h = EdgeSubgraph::from_ids(
        g,
        middle.iter().filter(|&&(_, arc)| net.flow(arc) == 1).map(|&(e, _)| e),
    )
    .expect("edge ids in range");
    debug_assert_eq!(h.len(), value);
    let coloring = konig_color(g, &h, k)?;
    Ok(SolveResult {
        k,
        nu: value,
        subgraph: h,
        coloring,
        method: Method::Flow,
        stats: SolveStats {
            flow_value: value,
            exact: true,
            ..SolveStats::default()
        },
    })
}
