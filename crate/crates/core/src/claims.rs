//! The bundled claims suite behind `kecs self-test` and the acceptance
//! tests. Each claim runs at two scales: `Quick` for the CLI and `Full` for
//! the populations the tool is specified against.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::genio::generate::{sample_rng, sample_seed};
use crate::genio::{
    coloring_span, emit_certificate, gen_named, gen_random_bipartite, gen_random_multigraph, gen_regular_bipartite,
    two_triangles_a2, verify_certificate,
};
use crate::graph::{bipartition, MultiGraph};
use crate::solver::{
    augment, find_augmenting_path, find_augmenting_path_exhaustive, nu_oracle, solve, solve_augmenting, solve_flow,
    Method, SolveError,
};
use crate::spectrum::{
    labeled_count, labeled_graph, replay_report, search_counterexamples, spectrum, GraphClass, Rule, SearchConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Corrupts one entry of the golden value table.
    pub corrupt_golden: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub scale: Scale,
    pub faults: Faults,
    pub jobs: Option<usize>,
}

impl Context {
    pub fn new(scale: Scale) -> Self {
        Context {
            scale,
            faults: Faults::default(),
            jobs: None,
        }
    }

    fn pick<T>(&self, quick: T, full: T) -> T {
        match self.scale {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

/// ", first: ..." suffix naming the first failure, if any.
fn first<T: std::fmt::Display>(bad: &[T]) -> String {
    bad.first().map(|b| format!(", first: {b}")).unwrap_or_default()
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub title: &'static str,
    run: fn(&Context) -> Outcome,
}

impl Claim {
    pub fn run(&self, ctx: &Context) -> (Outcome, f64) {
        let t = Instant::now();
        let out = match ctx.jobs {
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .expect("thread pool")
                .install(|| (self.run)(ctx)),
            None => (self.run)(ctx),
        };
        (out, t.elapsed().as_secs_f64())
    }
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "regular-spectrum",
        title: "k-regular bipartite graphs have nu_i = i|V|/2 for i <= k",
        run: regular_spectrum,
    },
    Claim {
        id: "midpoint",
        title: "2 nu_k >= nu_{k-i} + nu_{k+i} on every small bipartite graph",
        run: midpoint,
    },
    Claim {
        id: "concavity",
        title: "spectrum increments never grow on every small bipartite graph",
        run: concavity,
    },
    Claim {
        id: "method-agreement",
        title: "augmenting, flow and oracle agree on bipartite graphs",
        run: method_agreement,
    },
    Claim {
        id: "two-triangles",
        title: "a maximum 2-edge-colorable subgraph with an augmenting path",
        run: two_triangles,
    },
    Claim {
        id: "saturated-ends",
        title: "edges outside a maximum subgraph have an end of degree k",
        run: saturated_ends,
    },
    Claim {
        id: "deletion-bounds",
        title: "nu_k moves by at most k per vertex and 1 per edge deleted",
        run: deletion_bounds,
    },
    Claim {
        id: "conjecture-sweeps",
        title: "nearly bipartite and odd transversal sweeps complete",
        run: conjecture_sweeps,
    },
    Claim {
        id: "cubic-bound",
        title: "4 nu_2 <= n + 2 nu_3 on K33, K4, the cube and Petersen",
        run: cubic_bound,
    },
    Claim {
        id: "certificates",
        title: "certificates round trip and detect every coloring bit flip",
        run: certificates,
    },
];

pub fn find(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

fn regular_spectrum(ctx: &Context) -> Outcome {
    let count = ctx.pick(50, 200);
    let bad: Vec<String> = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = sample_rng(sample_seed(2, i));
            let half_n = rng.gen_range(1..=8);
            let k = rng.gen_range(0..=5);
            let g = gen_regular_bipartite(half_n, k, rng.gen());
            let s = spectrum(&g, Method::Flow, None).ok()?;
            let ok = (0..=k).all(|j| s.get(j) == Some(j * g.n() / 2));
            (!ok).then(|| format!("half_n={half_n} k={k}: {:?}", s.values))
        })
        .collect();
    Outcome::check(
        bad.is_empty(),
        format!("{count} instances, {} mismatches{}", bad.len(), first(&bad)),
    )
}

fn bipartite_sweep(ctx: &Context, rule: Rule) -> Outcome {
    let cfg = SearchConfig {
        class: GraphClass::Bipartite,
        max_n: ctx.pick(5, 7),
        rules: vec![rule],
        use_cache: false,
        budget: None,
        ..SearchConfig::default()
    };
    let out = search_counterexamples(&cfg);
    Outcome::check(
        out.reports.is_empty() && out.unverified == 0,
        format!(
            "{} labeled graphs on n <= {}, {} checks, {} violations",
            out.graphs,
            cfg.max_n,
            out.checks,
            out.reports.len()
        ),
    )
}

fn midpoint(ctx: &Context) -> Outcome {
    bipartite_sweep(ctx, Rule::Midpoint)
}

fn concavity(ctx: &Context) -> Outcome {
    bipartite_sweep(ctx, Rule::Concavity)
}

/// Simple bipartite graphs on at most `max_n` vertices with at most
/// `max_m` edges, plus seeded random bipartite multigraphs on at most 10
/// vertices with multiplicity up to 3 and at most 16 edges.
pub fn agreement_population(max_n: usize, max_m: usize, random: usize) -> Vec<MultiGraph> {
    let mut pop: Vec<MultiGraph> = (1..=max_n)
        .flat_map(|n| (0..labeled_count(n, 1).unwrap()).map(move |i| labeled_graph(n, 1, i)))
        .filter(|g| g.m() <= max_m && bipartition(g).is_present())
        .collect();
    for i in 0..random as u64 {
        let mut rng = sample_rng(sample_seed(4, i));
        loop {
            let n = rng.gen_range(2..=10);
            let nu = rng.gen_range(1..n);
            let g = gen_random_bipartite(nu, n - nu, rng.gen_range(0.05..0.6), rng.gen_range(1..=3), rng.gen());
            if g.m() <= 16 {
                pop.push(g);
                break;
            }
        }
    }
    pop
}

fn population(ctx: &Context) -> Vec<MultiGraph> {
    agreement_population(ctx.pick(5, 7), 10, ctx.pick(100, 1000))
}

fn method_agreement(ctx: &Context) -> Outcome {
    let pop = population(ctx);
    let bad: Vec<String> = pop
        .par_iter()
        .flat_map_iter(|g| {
            (0..=g.max_degree() + 1).filter_map(move |k| {
                let a = solve_augmenting(g, k).map(|r| r.nu);
                let f = solve_flow(g, k).map(|r| r.nu);
                let o = nu_oracle(g, k, None).map(|r| (r.nu, r.stats.exact));
                match (a, f, o) {
                    (Ok(a), Ok(f), Ok((o, true))) if a == f && f == o => None,
                    other => Some(format!("{:?} k={k}: {other:?}", g.edges())),
                }
            })
        })
        .collect();
    Outcome::check(
        bad.is_empty(),
        format!("{} graphs, {} disagreements{}", pop.len(), bad.len(), first(&bad)),
    )
}

fn two_triangles(_: &Context) -> Outcome {
    let (g, h, _) = two_triangles_a2();
    let best = match nu_oracle(&g, 2, None) {
        Ok(r) if r.stats.exact => r.nu,
        other => return Outcome::check(false, format!("oracle failed: {other:?}")),
    };
    let Some(p) = find_augmenting_path_exhaustive(&g, &h, 2) else {
        return Outcome::check(false, "no augmenting path found");
    };
    let valid = p.validate(&g, &h, 2).is_ok();
    let grown = augment(&g, &h, &p, 2).map(|h2| h2.len()).unwrap_or(0);
    let refused = matches!(find_augmenting_path(&g, &h, 2), Err(SolveError::NotBipartite { .. }));
    Outcome::check(
        best == 5 && h.len() == 5 && valid && grown == 6 && refused,
        format!(
            "nu_2 = {best}, |A_2| = {}, path {:?} valid = {valid}, augmented size {grown} exceeds nu_2",
            h.len(),
            p.vertices
        ),
    )
}

fn saturated_ends(ctx: &Context) -> Outcome {
    let pop = population(ctx);
    let checked: Vec<Result<usize, String>> = pop
        .par_iter()
        .map(|g| {
            let mut n = 0;
            for k in 0..=g.max_degree() + 1 {
                for method in Method::ALL {
                    let r = solve(g, k, method, None).map_err(|e| e.to_string())?;
                    for e in (0..g.m()).filter(|&e| !r.subgraph.contains(e)) {
                        let (u, v) = g.endpoints(e);
                        if r.subgraph.degree(u) != k && r.subgraph.degree(v) != k {
                            return Err(format!("{:?} k={k} {method}: edge {e}", g.edges()));
                        }
                        n += 1;
                    }
                }
            }
            Ok(n)
        })
        .collect();
    let bad: Vec<&String> = checked.iter().filter_map(|r| r.as_ref().err()).collect();
    let edges: usize = checked.iter().filter_map(|r| r.as_ref().ok()).sum();
    Outcome::check(
        bad.is_empty(),
        format!(
            "{} graphs, {edges} excluded edges checked, {} violations{}",
            pop.len(),
            bad.len(),
            first(&bad)
        ),
    )
}

fn deletion_bounds(ctx: &Context) -> Outcome {
    let cfg = SearchConfig {
        class: GraphClass::All,
        max_n: ctx.pick(4, 6),
        rules: vec![Rule::DeletionBounds],
        budget: None,
        ..SearchConfig::default()
    };
    let out = search_counterexamples(&cfg);
    Outcome::check(
        out.reports.is_empty() && out.unverified == 0,
        format!(
            "{} labeled graphs on n <= {}, {} violations",
            out.graphs,
            cfg.max_n,
            out.reports.len()
        ),
    )
}

fn conjecture_sweeps(ctx: &Context) -> Outcome {
    let sweeps = [
        (GraphClass::NearlyBipartite, ctx.pick(5, 7), vec![Rule::NearlyBipartite]),
        (GraphClass::All, ctx.pick(5, 6), vec![Rule::OddTransversal]),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (class, max_n, rules) in sweeps {
        let cfg = SearchConfig {
            class,
            max_n,
            rules,
            ..SearchConfig::default()
        };
        let out = search_counterexamples(&cfg);
        let replayed = out
            .reports
            .iter()
            .filter(|r| !r.informational)
            .all(|r| replay_report(r, None) == Ok(true));
        pass &= out.theorem_violations == 0 && out.unverified == 0 && replayed;
        detail.push(format!(
            "{:?} n <= {max_n}: {} graphs, {} checks, {} counterexamples",
            class, out.graphs, out.checks, out.counterexamples
        ));
    }
    Outcome::check(pass, detail.join("; "))
}

/// `(name, nu_2, nu_3)`, each pinned by an exact oracle run.
const CUBIC_GOLDEN: [(&str, usize, usize); 4] = [("k33", 6, 9), ("k4", 4, 6), ("cube", 8, 12), ("petersen", 9, 13)];

fn cubic_bound(ctx: &Context) -> Outcome {
    let mut golden = CUBIC_GOLDEN;
    if ctx.faults.corrupt_golden {
        golden[3].1 += 1;
    }
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, g2, g3) in golden {
        let g = gen_named(name).expect("named graph");
        let nu = |k| match nu_oracle(&g, k, Some(10_000_000)) {
            Ok(r) if r.stats.exact => Some(r.nu),
            _ => None,
        };
        let (Some(n2), Some(n3)) = (nu(2), nu(3)) else {
            pass = false;
            detail.push(format!("{name}: oracle budget exhausted"));
            continue;
        };
        let (lhs, rhs) = (4 * n2, g.n() + 2 * n3);
        pass &= n2 == g2 && n3 == g3 && lhs <= rhs;
        if name == "k33" {
            pass &= lhs == rhs;
        }
        detail.push(format!("{name}: {lhs} <= {rhs}"));
        if (n2, n3) != (g2, g3) {
            detail.push(format!("{name}: expected nu_2, nu_3 = {g2}, {g3}, got {n2}, {n3}"));
        }
    }
    Outcome::check(pass, detail.join("; "))
}

fn certificates(ctx: &Context) -> Outcome {
    let count = ctx.pick(100, 1000);
    let texts: Vec<(String, bool)> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = sample_seed(10, i);
            let mut rng = sample_rng(seed);
            let n = rng.gen_range(2..=8);
            let (g, method) = if rng.gen_bool(0.5) {
                let nu = rng.gen_range(1..n);
                let method = if rng.gen_bool(0.5) {
                    Method::Flow
                } else {
                    Method::Augmenting
                };
                (
                    gen_random_bipartite(nu, n - nu, rng.gen_range(0.1..0.7), 3, rng.gen()),
                    method,
                )
            } else {
                (
                    gen_random_multigraph(n, rng.gen_range(0.1..0.5), 2, rng.gen()),
                    Method::Oracle,
                )
            };
            let k = rng.gen_range(0..=g.max_degree() + 1);
            let r = solve(&g, k, method, None).expect("solvable instance");
            let text = emit_certificate(&r, &g, Some(seed));
            let ok = verify_certificate(&text).is_valid();
            (text, ok)
        })
        .collect();
    let failed = texts.iter().filter(|(_, ok)| !ok).count();
    let sampled: Vec<&String> = texts
        .iter()
        .map(|(t, _)| t)
        .filter(|t| coloring_span(t).is_some_and(|s| s.len() > 2))
        .take(ctx.pick(1, 5))
        .collect();
    let mut flips = 0;
    let mut missed = 0;
    for text in &sampled {
        let span = coloring_span(text).unwrap();
        for i in span {
            for bit in 0..8 {
                let mut m = text.as_bytes().to_vec();
                m[i] ^= 1 << bit;
                flips += 1;
                let detected = match String::from_utf8(m) {
                    Ok(s) => !verify_certificate(&s).is_valid(),
                    Err(_) => true,
                };
                missed += usize::from(!detected);
            }
        }
    }
    Outcome::check(
        failed == 0 && missed == 0 && !sampled.is_empty(),
        format!(
            "{count} round trips, {failed} rejected; {flips} bit flips over {} certificates, {missed} undetected",
            sampled.len()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = CLAIMS.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CLAIMS.len());
        assert!(find("cubic-bound").is_some());
    }

    #[test]
    fn fast_claims_pass() {
        let ctx = Context::new(Scale::Quick);
        for id in ["two-triangles", "cubic-bound", "regular-spectrum"] {
            let (out, _) = find(id).unwrap().run(&ctx);
            assert!(out.pass, "{id}: {}", out.detail);
        }
    }

    #[test]
    fn corrupted_golden_fails() {
        let ctx = Context {
            faults: Faults { corrupt_golden: true },
            ..Context::new(Scale::Quick)
        };
        let (out, _) = find("cubic-bound").unwrap().run(&ctx);
        assert!(!out.pass);
    }
}
