//! Dinic's algorithm with integral capacities.
//!
//! Arcs are explored in insertion order, which makes the resulting flow a
//! deterministic function of the construction sequence.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    rev: usize,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    /// `(tail, index in adj[tail], original capacity)` per forward arc.
    arcs: Vec<(usize, usize, u64)>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its handle for [`FlowNetwork::flow`].
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let (fi, ti) = (self.adj[from].len(), self.adj[to].len() + usize::from(from == to));
        self.adj[from].push(Arc { to, cap, rev: ti });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            rev: fi,
        });
        self.arcs.push((from, fi, cap));
        self.arcs.len() - 1
    }

    /// Flow currently on arc `handle`.
    pub fn flow(&self, handle: usize) -> u64 {
        let (from, idx, cap) = self.arcs[handle];
        cap - self.adj[from][idx].cap
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for a in &self.adj[x] {
                if a.cap > 0 && level[a.to] == usize::MAX {
                    level[a.to] = level[x] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn push(&mut self, x: usize, t: usize, limit: u64, level: &[usize], next: &mut [usize]) -> u64 {
        if x == t {
            return limit;
        }
        while next[x] < self.adj[x].len() {
            let i = next[x];
            let Arc { to, cap, rev } = self.adj[x][i];
            if cap > 0 && level[to] == level[x] + 1 {
                let pushed = self.push(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.adj[x][i].cap -= pushed;
                    self.adj[to][rev].cap += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0
    }

    /// Augments to a maximum `s`-`t` flow and returns the added value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        assert_ne!(s, t);
        let mut total = 0;
        while let Some(level) = self.levels(s, t) {
            let mut next = vec![0; self.adj.len()];
            loop {
                let f = self.push(s, t, u64::MAX, &level, &mut next);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}
