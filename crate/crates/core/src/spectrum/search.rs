//! Sweeps over graph classes looking for rule violations.
//!
//! Graphs are produced in a fixed order (exhaustive: by vertex count, then by
//! edge multiplicity vector; random: by sample index) and evaluated in
//! parallel chunks whose results are concatenated in that order, so the
//! output does not depend on the number of worker threads.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;
use rayon::prelude::*;

use super::checks::{
    check_b_conjecture, check_concavity, check_cubic_bound, check_midpoints, check_nearly_bipartite,
    deletion_bounds_report, saturated_ends_report, CheckReport, Rule,
};
use super::{canonical_key, default_method, spectrum, Fingerprint, NuSpectrum};
use crate::genio::generate::{
    gen_nearly_bipartite, gen_random_bipartite, gen_random_multigraph, sample_rng, sample_seed,
};
use crate::graph::{bipartition, is_bipartite_without, odd_cycle_transversal_number, MultiGraph};
use crate::solver::{solve, Method, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Bipartite,
    NearlyBipartite,
    All,
}

impl GraphClass {
    pub fn contains(self, g: &MultiGraph) -> bool {
        match self {
            GraphClass::Bipartite => bipartition(g).is_present(),
            GraphClass::NearlyBipartite => (0..g.n()).any(|v| is_bipartite_without(g, 1 << v)) || g.n() == 0,
            GraphClass::All => true,
        }
    }
}

impl std::str::FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bipartite" => Ok(GraphClass::Bipartite),
            "nearly-bipartite" => Ok(GraphClass::NearlyBipartite),
            "all" => Ok(GraphClass::All),
            _ => Err(format!(
                "unknown class `{s}` (expected bipartite, nearly-bipartite or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    /// Every labeled multigraph on `1..=max_n` vertices with multiplicities
    /// up to `max_multiplicity`.
    Exhaustive,
    Random {
        samples: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub class: GraphClass,
    pub max_n: usize,
    pub max_multiplicity: usize,
    pub rules: Vec<Rule>,
    pub sampler: Sampler,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Oracle node budget per solve.
    pub budget: Option<u64>,
    /// Share spectra between isomorphic simple graphs.
    pub use_cache: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            class: GraphClass::All,
            max_n: 5,
            max_multiplicity: 1,
            rules: vec![Rule::Midpoint],
            sampler: Sampler::Exhaustive,
            jobs: None,
            budget: Some(50_000_000),
            use_cache: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Graphs of the requested class that were evaluated.
    pub graphs: u64,
    /// Reports produced, whatever their verdict.
    pub checks: u64,
    /// Violations, in enumeration order. Informational ones included.
    pub reports: Vec<CheckReport>,
    /// Violations of proved statements: bugs.
    pub theorem_violations: u64,
    /// Violations of conjectures.
    pub counterexamples: u64,
    /// Violations outside the class a statement is claimed for.
    pub informational: u64,
    /// Graphs skipped because an oracle run hit its budget.
    pub unverified: u64,
}

impl SearchOutcome {
    fn absorb(&mut self, other: SearchOutcome) {
        self.graphs += other.graphs;
        self.checks += other.checks;
        self.theorem_violations += other.theorem_violations;
        self.counterexamples += other.counterexamples;
        self.informational += other.informational;
        self.unverified += other.unverified;
        self.reports.extend(other.reports);
    }

    fn record(&mut self, reports: Vec<CheckReport>) {
        self.checks += reports.len() as u64;
        for r in reports.into_iter().filter(CheckReport::is_violation) {
            if r.informational {
                self.informational += 1;
            } else if r.rule.is_conjecture() {
                self.counterexamples += 1;
            } else {
                self.theorem_violations += 1;
            }
            self.reports.push(r);
        }
    }
}

/// Spectra keyed by canonical label. Multigraphs and large graphs bypass it.
#[derive(Debug, Default)]
pub struct SpectrumCache {
    map: Mutex<HashMap<(usize, u64), NuSpectrum>>,
    enabled: bool,
    method: Option<Method>,
}

impl SpectrumCache {
    pub fn new(enabled: bool) -> Self {
        SpectrumCache {
            map: Mutex::default(),
            enabled,
            method: None,
        }
    }

    /// Solves every graph with `method` instead of the default.
    pub fn with_method(enabled: bool, method: Method) -> Self {
        SpectrumCache {
            method: Some(method),
            ..SpectrumCache::new(enabled)
        }
    }

    /// Flow for bipartite graphs and oracle otherwise, unless a method was
    /// fixed.
    pub fn spectrum(&self, g: &MultiGraph, budget: Option<u64>) -> Result<NuSpectrum, SolveError> {
        let key = if self.enabled { canonical_key(g) } else { None };
        if let Some(key) = key {
            if let Some(s) = self.map.lock().unwrap().get(&key) {
                let mut s = s.clone();
                s.fingerprint = Fingerprint::of(g);
                return Ok(s);
            }
        }
        let s = spectrum(g, self.method.unwrap_or_else(|| default_method(g)), budget)?;
        if let (Some(key), true) = (key, s.exact) {
            self.map.lock().unwrap().insert(key, s.clone());
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of evaluating one graph.
#[derive(Debug, Clone, Default)]
pub struct GraphEvaluation {
    pub reports: Vec<CheckReport>,
    /// An oracle run hit its budget; no reports were produced.
    pub unverified: bool,
}

/// Runs `rules` on `g`. Rules whose hypotheses `g` does not meet are
/// skipped (`conj1` needs `b(G) <= 1`, `cubic` needs a cubic graph).
/// Requesting `conj2` also yields the floored `conj2-floor` report.
pub fn evaluate(g: &MultiGraph, rules: &[Rule], cache: &SpectrumCache, budget: Option<u64>) -> GraphEvaluation {
    let s = match cache.spectrum(g, budget) {
        Ok(s) if s.exact => s,
        _ => {
            return GraphEvaluation {
                reports: Vec::new(),
                unverified: true,
            }
        }
    };
    let needs_b = rules
        .iter()
        .any(|r| matches!(r, Rule::OddTransversal | Rule::OddTransversalFloor));
    let b = needs_b.then(|| odd_cycle_transversal_number(g, None).unwrap());
    let mut reports = Vec::new();
    let mut unverified = false;
    for &rule in rules {
        match rule {
            Rule::Concavity => reports.push(check_concavity(g, &s)),
            Rule::Midpoint => reports.extend(check_midpoints(g, &s).ok()),
            Rule::NearlyBipartite => reports.extend(check_nearly_bipartite(g, &s).ok()),
            Rule::OddTransversal => {
                reports.extend(check_b_conjecture(g, &s, b.unwrap(), false).ok());
                if !rules.contains(&Rule::OddTransversalFloor) {
                    reports.extend(check_b_conjecture(g, &s, b.unwrap(), true).ok());
                }
            }
            Rule::OddTransversalFloor => reports.extend(check_b_conjecture(g, &s, b.unwrap(), true).ok()),
            Rule::Cubic => reports.extend(check_cubic_bound(g, &s).ok()),
            Rule::SaturatedEnds => {
                let method = cache.method.unwrap_or_else(|| default_method(g));
                let mut maxima = Vec::new();
                for k in 0..=s.top() {
                    match solve(g, k, method, budget) {
                        Ok(r) if r.stats.exact => maxima.push((k, r.subgraph)),
                        _ => unverified = true,
                    }
                }
                reports.push(saturated_ends_report(g, &s, &maxima));
            }
            Rule::DeletionBounds => {
                let kmax = g.max_degree() + 1;
                let mut failed = false;
                let r = deletion_bounds_report(g, &s, kmax, |h, k| match cache.spectrum(h, budget) {
                    Ok(sh) if sh.exact => sh.get(k).expect("saturated spectrum"),
                    _ => {
                        failed = true;
                        0
                    }
                });
                if failed {
                    unverified = true;
                } else {
                    reports.push(r);
                }
            }
        }
    }
    GraphEvaluation { reports, unverified }
}

/// Recomputes a report from its recorded graph with the oracle, sharing
/// nothing with the run that produced it. `Ok(true)` when the recomputed
/// report matches in every recorded value.
pub fn replay_report(r: &CheckReport, budget: Option<u64>) -> Result<bool, String> {
    let g = r.graph.to_graph().map_err(|e| e.to_string())?;
    let cache = SpectrumCache::with_method(false, Method::Oracle);
    let eval = evaluate(&g, &[r.rule], &cache, budget);
    if eval.unverified {
        return Err("oracle budget exhausted during replay".to_string());
    }
    let again = eval
        .reports
        .iter()
        .find(|x| x.rule == r.rule)
        .ok_or_else(|| format!("rule {} does not apply to the recorded graph", r.rule))?;
    Ok((
        again.k,
        again.i,
        again.lhs,
        again.rhs,
        again.verdict,
        &again.target,
        &again.spectrum,
        again.b,
    ) == (r.k, r.i, r.lhs, r.rhs, r.verdict, &r.target, &r.spectrum, r.b))
}

/// Number of labeled multigraphs on `n` vertices with multiplicities up to
/// `max_mult`.
pub fn labeled_count(n: usize, max_mult: usize) -> Option<u64> {
    (max_mult as u64 + 1).checked_pow(u32::try_from(n * n.saturating_sub(1) / 2).ok()?)
}

/// The `index`-th labeled multigraph on `n` vertices, in the order used by
/// exhaustive search.
pub fn labeled_graph(n: usize, max_mult: usize, index: u64) -> MultiGraph {
    graph_at(n, &vertex_pairs(n), max_mult, index)
}

/// Upper triangle pairs `(i, j)`, `i < j`, ordered by `j` then `i`.
fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// The `index`-th multiplicity vector in base `max_mult + 1`, first pair as
/// the least significant digit.
fn graph_at(n: usize, pairs: &[(usize, usize)], max_mult: usize, mut index: u64) -> MultiGraph {
    let base = max_mult as u64 + 1;
    let mut edges = Vec::new();
    for &(i, j) in pairs {
        let mult = index % base;
        index /= base;
        for _ in 0..mult {
            edges.push((i, j));
        }
    }
    MultiGraph::from_edges(n, &edges).expect("pairs are distinct vertices")
}

const CHUNK: u64 = 2048;

fn evaluate_range(
    cfg: &SearchConfig,
    cache: &SpectrumCache,
    n: usize,
    pairs: &[(usize, usize)],
    range: std::ops::Range<u64>,
) -> SearchOutcome {
    let mut out = SearchOutcome::default();
    for index in range {
        let g = graph_at(n, pairs, cfg.max_multiplicity, index);
        if !cfg.class.contains(&g) {
            continue;
        }
        out.graphs += 1;
        let eval = evaluate(&g, &cfg.rules, cache, cfg.budget);
        out.unverified += u64::from(eval.unverified);
        out.record(eval.reports);
    }
    out
}

fn random_graph(cfg: &SearchConfig, seed: u64) -> MultiGraph {
    let mut rng = sample_rng(seed);
    let n = rng.gen_range(1..=cfg.max_n.max(1));
    let p: f64 = rng.gen();
    let mult = cfg.max_multiplicity.max(1);
    let sub_seed = rng.gen();
    match cfg.class {
        GraphClass::Bipartite => {
            let nu = rng.gen_range(0..=n);
            gen_random_bipartite(nu, n - nu, p, mult, sub_seed)
        }
        GraphClass::NearlyBipartite => {
            let base = n.saturating_sub(1);
            let nu = rng.gen_range(0..=base);
            let apex = rng.gen_range(0..=base);
            gen_nearly_bipartite(nu, base - nu, p, mult, apex, sub_seed)
        }
        GraphClass::All => gen_random_multigraph(n, p, mult, sub_seed),
    }
}

fn run(cfg: &SearchConfig) -> SearchOutcome {
    let cache = SpectrumCache::new(cfg.use_cache);
    let mut total = SearchOutcome::default();
    match cfg.sampler {
        Sampler::Exhaustive => {
            for n in 1..=cfg.max_n {
                let pairs = vertex_pairs(n);
                let count = labeled_count(n, cfg.max_multiplicity).expect("exhaustive range overflows u64");
                let chunks: Vec<u64> = (0..count.div_ceil(CHUNK)).collect();
                let parts: Vec<SearchOutcome> = chunks
                    .par_iter()
                    .map(|&c| evaluate_range(cfg, &cache, n, &pairs, c * CHUNK..((c + 1) * CHUNK).min(count)))
                    .collect();
                for part in parts {
                    total.absorb(part);
                }
            }
        }
        Sampler::Random { samples, seed } => {
            let parts: Vec<SearchOutcome> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut out = SearchOutcome::default();
                    let s = sample_seed(seed, i as u64);
                    let g = random_graph(cfg, s);
                    if cfg.class.contains(&g) {
                        out.graphs = 1;
                        let eval = evaluate(&g, &cfg.rules, &cache, cfg.budget);
                        out.unverified = u64::from(eval.unverified);
                        let mut reports = eval.reports;
                        for r in &mut reports {
                            r.seed = Some(s);
                        }
                        out.record(reports);
                    }
                    out
                })
                .collect();
            for part in parts {
                total.absorb(part);
            }
        }
    }
    total
}

/// Evaluates `cfg.rules` over the configured population.
pub fn search_counterexamples(cfg: &SearchConfig) -> SearchOutcome {
    match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(|| run(cfg)),
        None => run(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_order_and_indexing() {
        assert_eq!(vertex_pairs(3), vec![(0, 1), (0, 2), (1, 2)]);
        // Base 3 digits 2, 1, 0: pair (0, 1) twice, (0, 2) once.
        let g = graph_at(3, &vertex_pairs(3), 2, 5);
        assert_eq!(g.edges(), &[(0, 1), (0, 1), (0, 2)]);
    }

    #[test]
    fn labeled_bipartite_counts() {
        // Labeled bipartite graphs on n vertices: 1, 2, 7, 41, 376.
        let cfg = SearchConfig {
            class: GraphClass::Bipartite,
            max_n: 5,
            rules: vec![],
            ..SearchConfig::default()
        };
        assert_eq!(search_counterexamples(&cfg).graphs, 1 + 2 + 7 + 41 + 376);
    }

    #[test]
    fn small_bipartite_sweep_is_clean() {
        let cfg = SearchConfig {
            class: GraphClass::Bipartite,
            max_n: 5,
            rules: vec![Rule::Midpoint, Rule::Concavity, Rule::SaturatedEnds],
            ..SearchConfig::default()
        };
        let out = search_counterexamples(&cfg);
        assert_eq!(out.reports, vec![]);
        assert!(out.checks > 0);
    }

    #[test]
    fn concavity_failures_only_off_bipartite() {
        let cfg = SearchConfig {
            class: GraphClass::All,
            max_n: 5,
            rules: vec![Rule::Concavity],
            ..SearchConfig::default()
        };
        let out = search_counterexamples(&cfg);
        assert_eq!(out.theorem_violations, 0);
        assert!(out.reports.iter().all(|r| r.informational));
    }

    #[test]
    fn output_independent_of_jobs() {
        let base = SearchConfig {
            class: GraphClass::All,
            max_n: 4,
            max_multiplicity: 2,
            rules: vec![Rule::Concavity, Rule::OddTransversal],
            ..SearchConfig::default()
        };
        let one = search_counterexamples(&SearchConfig {
            jobs: Some(1),
            ..base.clone()
        });
        let three = search_counterexamples(&SearchConfig { jobs: Some(3), ..base });
        assert_eq!(one, three);
    }

    #[test]
    fn reports_replay() {
        let g = crate::genio::gen_named("figure1").unwrap();
        let eval = evaluate(
            &g,
            &[Rule::OddTransversal, Rule::Concavity],
            &SpectrumCache::new(true),
            None,
        );
        assert_eq!(eval.reports.len(), 3);
        for r in &eval.reports {
            assert_eq!(replay_report(r, None), Ok(true), "{}", r.rule);
        }
        let mut forged = eval.reports[0].clone();
        forged.lhs += 1;
        assert_eq!(replay_report(&forged, None), Ok(false));
    }

    #[test]
    fn random_sampling_is_seeded() {
        let cfg = SearchConfig {
            class: GraphClass::NearlyBipartite,
            max_n: 6,
            max_multiplicity: 2,
            rules: vec![Rule::NearlyBipartite, Rule::Concavity],
            sampler: Sampler::Random { samples: 40, seed: 9 },
            ..SearchConfig::default()
        };
        let a = search_counterexamples(&cfg);
        assert_eq!(a, search_counterexamples(&cfg));
        assert_eq!(a.graphs, 40);
        assert!(a.reports.iter().all(|r| r.seed.is_some()));
    }
}
