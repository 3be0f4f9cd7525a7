//! The sequence `nu_0, nu_1, ..` of a graph, the inequalities it is known or
//! conjectured to satisfy, and a harness that sweeps graph classes for
//! violations.

mod canon;
pub mod checks;
pub mod search;

use serde::{Deserialize, Serialize};

use crate::graph::{bipartition, MultiGraph};
use crate::solver::{solve, Method, SolveError};

pub use canon::canonical_key;
pub use checks::{
    check_b_conjecture, check_concavity, check_cubic_bound, check_midpoint, check_midpoints, check_nearly_bipartite,
    deletion_bounds_report, saturated_ends_report, CheckError, CheckReport, Rule, Verdict,
};
pub use search::{
    evaluate, labeled_count, labeled_graph, replay_report, search_counterexamples, GraphClass, GraphEvaluation,
    Sampler, SearchConfig, SearchOutcome, SpectrumCache,
};

/// Isomorphism-invariant summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: usize,
    pub m: usize,
    /// Degrees in non-increasing order.
    pub degrees: Vec<usize>,
}

impl Fingerprint {
    pub fn of(g: &MultiGraph) -> Self {
        let mut degrees = g.degrees();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Fingerprint {
            n: g.n(),
            m: g.m(),
            degrees,
        }
    }
}

/// `nu_0..=nu_K` with the method that produced each entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuSpectrum {
    pub values: Vec<usize>,
    pub methods: Vec<Method>,
    pub fingerprint: Fingerprint,
    /// False if some entry came from an oracle run that hit its budget.
    pub exact: bool,
}

impl NuSpectrum {
    /// Largest `k` with a stored value.
    pub fn top(&self) -> usize {
        self.values.len() - 1
    }

    /// The last stored value equals `m`, so every later value does too.
    pub fn is_saturated(&self) -> bool {
        self.values.last() == Some(&self.fingerprint.m)
    }

    /// `nu_k`, extended by `m` past the top for saturated spectra.
    pub fn get(&self, k: usize) -> Option<usize> {
        match self.values.get(k) {
            Some(&v) => Some(v),
            None if self.is_saturated() => Some(self.fingerprint.m),
            None => None,
        }
    }

    /// Consecutive differences `nu_k - nu_{k-1}` for `k = 1..=top`.
    pub fn increments(&self) -> Vec<usize> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Computes the spectrum up to the first `k` with `nu_k = m`.
///
/// For bipartite graphs that is `k = Delta(G)`. For other graphs it is the
/// chromatic index, reached no later than `2 Delta(G)`; the loop stops there
/// regardless so that an oracle running out of budget cannot spin forever.
pub fn spectrum(g: &MultiGraph, method: Method, budget: Option<u64>) -> Result<NuSpectrum, SolveError> {
    let delta = g.max_degree();
    let stop = if bipartition(g).is_present() { delta } else { 2 * delta };
    build(g, method, budget, stop, true)
}

/// Computes `nu_0..=nu_kmax` exactly as asked.
pub fn spectrum_upto(
    g: &MultiGraph,
    method: Method,
    kmax: usize,
    budget: Option<u64>,
) -> Result<NuSpectrum, SolveError> {
    build(g, method, budget, kmax, false)
}

fn build(
    g: &MultiGraph,
    method: Method,
    budget: Option<u64>,
    kmax: usize,
    stop_at_m: bool,
) -> Result<NuSpectrum, SolveError> {
    let mut values = Vec::new();
    let mut methods = Vec::new();
    let mut exact = true;
    for k in 0..=kmax {
        let r = solve(g, k, method, budget)?;
        exact &= r.stats.exact;
        values.push(r.nu);
        methods.push(method);
        if stop_at_m && r.nu == g.m() {
            break;
        }
    }
    Ok(NuSpectrum {
        values,
        methods,
        fingerprint: Fingerprint::of(g),
        exact,
    })
}

/// Bipartite graphs go to the flow solver, everything else to the oracle.
pub fn default_method(g: &MultiGraph) -> Method {
    if bipartition(g).is_present() {
        Method::Flow
    } else {
        Method::Oracle
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> MultiGraph {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                edges.push((i, j));
            }
        }
        MultiGraph::from_edges(6, &edges).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn known_spectra() {
        for m in Method::ALL {
            assert_eq!(spectrum(&k33(), m, None).unwrap().values, vec![0, 3, 6, 9]);
            assert_eq!(spectrum(&cycle(6), m, None).unwrap().values, vec![0, 3, 6]);
        }
        let fig1 = MultiGraph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(spectrum(&fig1, Method::Oracle, None).unwrap().values, vec![0, 3, 5, 7]);
        assert_eq!(
            spectrum(&cycle(5), Method::Oracle, None).unwrap().values,
            vec![0, 2, 4, 5]
        );
        assert!(spectrum(&cycle(5), Method::Flow, None).is_err());
    }

    #[test]
    fn saturated_extension() {
        let s = spectrum(&cycle(6), Method::Flow, None).unwrap();
        assert_eq!(s.get(7), Some(6));
        let s = spectrum_upto(&k33(), Method::Flow, 1, None).unwrap();
        assert_eq!(s.get(2), None);
        assert_eq!(s.increments(), vec![3]);
        let empty = spectrum(&MultiGraph::empty(3), Method::Oracle, None).unwrap();
        assert_eq!(empty.values, vec![0]);
        assert_eq!(empty.get(4), Some(0));
    }
}
