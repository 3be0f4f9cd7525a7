use super::{Method, SolveError, SolveResult, SolveStats};
use crate::edge_color::EdgeColoring;
use crate::graph::{EdgeId, EdgeSubgraph, MultiGraph};

/// Colors beyond this count are not representable in the search state.
pub const ORACLE_MAX_COLORS: usize = 64;

struct Search<'a> {
    g: &'a MultiGraph,
    k: usize,
    order: Vec<EdgeId>,
    /// Colors used at each vertex, bit `c - 1` for color `c`.
    used: Vec<u64>,
    /// Undecided edges at each vertex.
    open: Vec<usize>,
    /// Color per position of `order`, 0 for skipped.
    choice: Vec<u8>,
    colored: usize,
    /// Highest color used so far. New colors are opened in order, which
    /// removes the `k!` relabelings of every coloring.
    top: usize,
    best: usize,
    best_choice: Vec<u8>,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Search<'_> {
    /// Edges that can still be colored: each needs a free slot at both ends.
    fn capacity_bound(&self) -> usize {
        let slots: usize = self
            .open
            .iter()
            .zip(&self.used)
            .map(|(&open, &used)| open.min(self.k - used.count_ones() as usize))
            .sum();
        slots / 2
    }

    fn run(&mut self, pos: usize) {
        if self.exhausted || self.best == self.order.len() {
            return;
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.exhausted = true;
            return;
        }
        if self.colored > self.best {
            self.best = self.colored;
            self.best_choice.copy_from_slice(&self.choice);
        }
        let remaining = self.order.len() - pos;
        if remaining == 0 || self.colored + remaining.min(self.capacity_bound()) <= self.best {
            return;
        }
        let e = self.order[pos];
        let (u, v) = self.g.endpoints(e);
        self.open[u] -= 1;
        self.open[v] -= 1;
        let opened = (self.top + 1).min(self.k);
        let free = !(self.used[u] | self.used[v]);
        for c in 1..=opened {
            let bit = 1u64 << (c - 1);
            if free & bit == 0 {
                continue;
            }
            self.used[u] |= bit;
            self.used[v] |= bit;
            self.choice[pos] = c as u8;
            self.colored += 1;
            let saved_top = self.top;
            self.top = self.top.max(c);
            self.run(pos + 1);
            self.top = saved_top;
            self.colored -= 1;
            self.choice[pos] = 0;
            self.used[u] &= !bit;
            self.used[v] &= !bit;
        }
        self.run(pos + 1);
        self.open[u] += 1;
        self.open[v] += 1;
    }
}

/// Exact `nu_k` of any loopless multigraph by branch and bound, with a
/// witness coloring.
///
/// Each edge is colored with one of the colors free at both ends or skipped.
/// Edges are decided by descending degree sum of their ends (ties: lower id
/// first). A branch is cut when the colored count plus the number of edges
/// that can still be colored cannot beat the best found. With a `budget` of
/// search nodes the result may be a lower bound only; `stats.exact` tells.
pub fn nu_oracle(g: &MultiGraph, k: usize, budget: Option<u64>) -> Result<SolveResult, SolveError> {
    let m = g.m();
    let k_eff = k.min(m);
    if k_eff > ORACLE_MAX_COLORS {
        return Err(SolveError::TooLarge(format!(
            "{k_eff} colors exceed the limit of {ORACLE_MAX_COLORS}"
        )));
    }
    let mut order: Vec<EdgeId> = (0..m).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.endpoints(e);
        std::cmp::Reverse(g.degree(u) + g.degree(v))
    });
    let mut s = Search {
        g,
        k: k_eff,
        order,
        used: vec![0; g.n()],
        open: g.degrees(),
        choice: vec![0; m],
        colored: 0,
        top: 0,
        best: 0,
        best_choice: vec![0; m],
        nodes: 0,
        budget,
        exhausted: false,
    };
    s.run(0);

    let mut coloring = EdgeColoring::new(g, k);
    for (pos, &c) in s.best_choice.iter().enumerate() {
        if c != 0 {
            coloring
                .assign(g, s.order[pos], c as usize)
                .expect("search only records proper colorings");
        }
    }
    let subgraph: EdgeSubgraph = coloring.support(g);
    Ok(SolveResult {
        k,
        nu: s.best,
        subgraph,
        coloring,
        method: Method::Oracle,
        stats: SolveStats {
            nodes: s.nodes,
            exact: !s.exhausted,
            ..SolveStats::default()
        },
    })
}
