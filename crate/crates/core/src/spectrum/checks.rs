//! Inequalities over spectra.
//!
//! Every check is phrased as `lhs >= rhs` in exact integer arithmetic and
//! produces a [`CheckReport`]. A report over several `(k, i)` pairs carries
//! the first violating pair, or the tightest one when all hold.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Fingerprint, NuSpectrum};
use crate::genio::GraphRecord;
use crate::graph::{bipartition, odd_cycle_transversal_number, EdgeSubgraph, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Non-increasing increments of the spectrum (bipartite graphs).
    #[serde(rename = "concavity")]
    Concavity,
    /// `2 nu_k >= nu_{k-i} + nu_{k+i}` (bipartite graphs).
    #[serde(rename = "midpoint")]
    Midpoint,
    /// `nu_k >= floor((nu_{k-1} + nu_{k+1}) / 2)` for nearly bipartite graphs.
    #[serde(rename = "conj1")]
    NearlyBipartite,
    /// `2 nu_k >= nu_{k-i} + nu_{k+i} - b(G)` for all graphs.
    #[serde(rename = "conj2")]
    OddTransversal,
    /// `nu_k >= floor((nu_{k-i} + nu_{k+i} - b(G)) / 2)`.
    #[serde(rename = "conj2-floor")]
    OddTransversalFloor,
    /// `4 nu_2 <= n + 2 nu_3` for cubic graphs.
    #[serde(rename = "cubic")]
    Cubic,
    /// An edge left out of a maximum k-edge-colorable subgraph of a bipartite
    /// graph has an end of degree `k` in it.
    #[serde(rename = "lemma5")]
    SaturatedEnds,
    /// `nu_k(G) <= nu_k(G - v) + k` and `nu_k(G - e) <= nu_k(G) <= nu_k(G - e) + 1`.
    #[serde(rename = "props34")]
    DeletionBounds,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::Concavity,
        Rule::Midpoint,
        Rule::NearlyBipartite,
        Rule::OddTransversal,
        Rule::OddTransversalFloor,
        Rule::Cubic,
        Rule::SaturatedEnds,
        Rule::DeletionBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Concavity => "concavity",
            Rule::Midpoint => "midpoint",
            Rule::NearlyBipartite => "conj1",
            Rule::OddTransversal => "conj2",
            Rule::OddTransversalFloor => "conj2-floor",
            Rule::Cubic => "cubic",
            Rule::SaturatedEnds => "lemma5",
            Rule::DeletionBounds => "props34",
        }
    }

    /// Open conjectures, as opposed to proved statements whose failure means
    /// a bug.
    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            Rule::NearlyBipartite | Rule::OddTransversal | Rule::OddTransversalFloor
        )
    }

    /// Rules that hold as theorems only on bipartite graphs.
    pub fn bipartite_only(self) -> bool {
        matches!(self, Rule::Concavity | Rule::Midpoint | Rule::SaturatedEnds)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
}

impl Verdict {
    pub fn compare(lhs: i64, rhs: i64) -> Verdict {
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => Verdict::Holds,
            std::cmp::Ordering::Equal => Verdict::Equality,
            std::cmp::Ordering::Less => Verdict::Violated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("index out of range: k = {k}, i = {i}, spectrum known up to {top}")]
    IndexOutOfRange { k: usize, i: usize, top: usize },
    #[error("graph is not nearly bipartite (b = {b})")]
    NotNearlyBipartite { b: usize },
    #[error("graph is not cubic")]
    NotCubic,
    #[error("spectrum does not reach nu_{0}")]
    Incomplete(usize),
}

/// One evaluated inequality with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub rule: Rule,
    pub graph: GraphRecord,
    pub k: Option<usize>,
    pub i: Option<usize>,
    pub lhs: i64,
    pub rhs: i64,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    pub fingerprint: Fingerprint,
    pub spectrum: Vec<usize>,
    /// Odd cycle transversal number, for rules that use it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    /// The rule is claimed for a narrower class than this graph belongs to,
    /// so a violation is reported but not counted as a failure.
    #[serde(default)]
    pub informational: bool,
    /// Which deleted vertex or edge a `props34` report refers to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

impl CheckReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// A violation that is not informational.
    pub fn counts(&self) -> bool {
        self.is_violation() && !self.informational
    }
}

struct Candidate {
    k: Option<usize>,
    i: Option<usize>,
    lhs: i64,
    rhs: i64,
    target: Option<String>,
}

/// First violation, else the smallest slack; ties keep the earlier one.
fn pick(cands: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    for c in cands {
        if c.lhs < c.rhs {
            return Some(c);
        }
        if best.as_ref().is_none_or(|b| c.lhs - c.rhs < b.lhs - b.rhs) {
            best = Some(c);
        }
    }
    best
}

fn report(rule: Rule, g: &MultiGraph, s: &NuSpectrum, c: Candidate, b: Option<usize>) -> CheckReport {
    let informational = rule.bipartite_only() && !bipartition(g).is_present();
    CheckReport {
        rule,
        graph: GraphRecord::from(g),
        k: c.k,
        i: c.i,
        lhs: c.lhs,
        rhs: c.rhs,
        verdict: Verdict::compare(c.lhs, c.rhs),
        seed: None,
        fingerprint: s.fingerprint.clone(),
        spectrum: s.values.clone(),
        b,
        informational,
        target: c.target,
    }
}

fn trivially_holds() -> Candidate {
    Candidate {
        k: None,
        i: None,
        lhs: 0,
        rhs: 0,
        target: None,
    }
}

fn value(s: &NuSpectrum, j: usize, k: usize, i: usize) -> Result<i64, CheckError> {
    s.get(j)
        .map(|v| v as i64)
        .ok_or(CheckError::IndexOutOfRange { k, i, top: s.top() })
}

/// Increments `nu_k - nu_{k-1}` never grow. Informational on non-bipartite
/// graphs.
pub fn check_concavity(g: &MultiGraph, s: &NuSpectrum) -> CheckReport {
    let d = s.increments();
    let mut cands: Vec<Candidate> = (1..d.len())
        .map(|j| Candidate {
            k: Some(j),
            i: None,
            lhs: d[j - 1] as i64,
            rhs: d[j] as i64,
            target: None,
        })
        .collect();
    if cands.is_empty() {
        cands.push(trivially_holds());
    }
    report(Rule::Concavity, g, s, pick(cands).unwrap(), None)
}

/// `2 nu_k >= nu_{k-i} + nu_{k+i}` for a single pair.
pub fn check_midpoint(g: &MultiGraph, s: &NuSpectrum, k: usize, i: usize) -> Result<CheckReport, CheckError> {
    if i > k {
        return Err(CheckError::IndexOutOfRange { k, i, top: s.top() });
    }
    let c = Candidate {
        k: Some(k),
        i: Some(i),
        lhs: 2 * value(s, k, k, i)?,
        rhs: value(s, k - i, k, i)? + value(s, k + i, k, i)?,
        target: None,
    };
    Ok(report(Rule::Midpoint, g, s, c, None))
}

/// Pairs `(k, i)` with `1 <= i <= k <= top`. Past the top of a saturated
/// spectrum every such inequality holds trivially.
fn pairs(s: &NuSpectrum) -> impl Iterator<Item = (usize, usize)> {
    let top = s.top();
    (1..=top).flat_map(|k| (1..=k).map(move |i| (k, i)))
}

/// [`check_midpoint`] over every pair.
pub fn check_midpoints(g: &MultiGraph, s: &NuSpectrum) -> Result<CheckReport, CheckError> {
    if !s.is_saturated() {
        return Err(CheckError::Incomplete(s.top() + 1));
    }
    let cands = pairs(s)
        .map(|(k, i)| {
            Ok(Candidate {
                k: Some(k),
                i: Some(i),
                lhs: 2 * value(s, k, k, i)?,
                rhs: value(s, k - i, k, i)? + value(s, k + i, k, i)?,
                target: None,
            })
        })
        .collect::<Result<Vec<_>, CheckError>>()?;
    let c = pick(cands).unwrap_or_else(trivially_holds);
    Ok(report(Rule::Midpoint, g, s, c, None))
}

/// The floored midpoint inequality for `i = 1`, on graphs with `b(G) <= 1`.
pub fn check_nearly_bipartite(g: &MultiGraph, s: &NuSpectrum) -> Result<CheckReport, CheckError> {
    let b = match odd_cycle_transversal_number(g, Some(1)) {
        Ok(b) => b,
        Err(_) => {
            let b = odd_cycle_transversal_number(g, None).unwrap();
            return Err(CheckError::NotNearlyBipartite { b });
        }
    };
    if !s.is_saturated() {
        return Err(CheckError::Incomplete(s.top() + 1));
    }
    let cands = (1..=s.top())
        .map(|k| {
            Ok(Candidate {
                k: Some(k),
                i: Some(1),
                lhs: value(s, k, k, 1)?,
                rhs: (value(s, k - 1, k, 1)? + value(s, k + 1, k, 1)?).div_euclid(2),
                target: None,
            })
        })
        .collect::<Result<Vec<_>, CheckError>>()?;
    let c = pick(cands).unwrap_or_else(trivially_holds);
    Ok(report(Rule::NearlyBipartite, g, s, c, Some(b)))
}

/// `2 nu_k >= nu_{k-i} + nu_{k+i} - b` over every pair, or its floored
/// half when `floored` is set.
pub fn check_b_conjecture(g: &MultiGraph, s: &NuSpectrum, b: usize, floored: bool) -> Result<CheckReport, CheckError> {
    if !s.is_saturated() {
        return Err(CheckError::Incomplete(s.top() + 1));
    }
    let cands = pairs(s)
        .map(|(k, i)| {
            let sum = value(s, k - i, k, i)? + value(s, k + i, k, i)? - b as i64;
            let nk = value(s, k, k, i)?;
            let (lhs, rhs) = if floored {
                (nk, sum.div_euclid(2))
            } else {
                (2 * nk, sum)
            };
            Ok(Candidate {
                k: Some(k),
                i: Some(i),
                lhs,
                rhs,
                target: None,
            })
        })
        .collect::<Result<Vec<_>, CheckError>>()?;
    let c = pick(cands).unwrap_or_else(trivially_holds);
    let rule = if floored {
        Rule::OddTransversalFloor
    } else {
        Rule::OddTransversal
    };
    Ok(report(rule, g, s, c, Some(b)))
}

/// `n + 2 nu_3 >= 4 nu_2` for cubic graphs.
pub fn check_cubic_bound(g: &MultiGraph, s: &NuSpectrum) -> Result<CheckReport, CheckError> {
    if g.n() == 0 || !g.is_regular(3) {
        return Err(CheckError::NotCubic);
    }
    let c = Candidate {
        k: Some(2),
        i: None,
        lhs: g.n() as i64 + 2 * value(s, 3, 3, 0)?,
        rhs: 4 * value(s, 2, 2, 0)?,
        target: None,
    };
    Ok(report(Rule::Cubic, g, s, c, None))
}

/// For each `(k, H_k)`: every edge outside `H_k` has an end of degree `k`.
/// `lhs` is the larger end degree of an outside edge, `rhs` is `k`.
pub fn saturated_ends_report(g: &MultiGraph, s: &NuSpectrum, maxima: &[(usize, EdgeSubgraph)]) -> CheckReport {
    let mut cands = Vec::new();
    for (k, h) in maxima {
        for e in (0..g.m()).filter(|&e| !h.contains(e)) {
            let (u, v) = g.endpoints(e);
            cands.push(Candidate {
                k: Some(*k),
                i: None,
                lhs: h.degree(u).max(h.degree(v)) as i64,
                rhs: *k as i64,
                target: Some(format!("edge {e}")),
            });
        }
    }
    report(
        Rule::SaturatedEnds,
        g,
        s,
        pick(cands).unwrap_or_else(trivially_holds),
        None,
    )
}

/// Deletion bounds for every vertex and edge and every `k` in `0..=kmax`.
/// `nu` maps a graph and `k` to `nu_k`.
pub fn deletion_bounds_report(
    g: &MultiGraph,
    s: &NuSpectrum,
    kmax: usize,
    mut nu: impl FnMut(&MultiGraph, usize) -> usize,
) -> CheckReport {
    let mut cands = Vec::new();
    let base: Vec<i64> = (0..=kmax).map(|k| nu(g, k) as i64).collect();
    for v in 0..g.n() {
        let (h, _) = g.delete_vertex(v).unwrap();
        for k in 0..=kmax {
            cands.push(Candidate {
                k: Some(k),
                i: None,
                lhs: nu(&h, k) as i64 + k as i64,
                rhs: base[k],
                target: Some(format!("vertex {v}")),
            });
        }
    }
    for e in 0..g.m() {
        let (h, _) = g.delete_edge(e).unwrap();
        for k in 0..=kmax {
            let without = nu(&h, k) as i64;
            cands.push(Candidate {
                k: Some(k),
                i: None,
                lhs: base[k],
                rhs: without,
                target: Some(format!("edge {e} lower")),
            });
            cands.push(Candidate {
                k: Some(k),
                i: None,
                lhs: without + 1,
                rhs: base[k],
                target: Some(format!("edge {e} upper")),
            });
        }
    }
    report(
        Rule::DeletionBounds,
        g,
        s,
        pick(cands).unwrap_or_else(trivially_holds),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Method;
    use crate::spectrum::spectrum;

    fn g_of(edges: &[(usize, usize)], n: usize) -> MultiGraph {
        MultiGraph::from_edges(n, edges).unwrap()
    }

    fn k33() -> MultiGraph {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                edges.push((i, j));
            }
        }
        g_of(&edges, 6)
    }

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g_of(&edges, n)
    }

    fn two_triangles() -> MultiGraph {
        g_of(&[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)], 6)
    }

    fn fake(values: Vec<usize>, m: usize) -> NuSpectrum {
        NuSpectrum {
            methods: vec![Method::Oracle; values.len()],
            values,
            fingerprint: Fingerprint {
                n: 0,
                m,
                degrees: vec![],
            },
            exact: true,
        }
    }

    #[test]
    fn concavity_examples() {
        let g = k33();
        let s = spectrum(&g, Method::Flow, None).unwrap();
        let r = check_concavity(&g, &s);
        assert_eq!(r.verdict, Verdict::Equality);
        assert!(!r.informational);

        let f = two_triangles();
        let r = check_concavity(&f, &spectrum(&f, Method::Oracle, None).unwrap());
        assert_ne!(r.verdict, Verdict::Violated);
        assert!(r.informational);

        let r = check_concavity(&cycle(4), &fake(vec![0, 1, 3], 3));
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!((r.k, r.lhs, r.rhs), (Some(1), 1, 2));
    }

    #[test]
    fn midpoint_examples() {
        let g = k33();
        let s = spectrum(&g, Method::Flow, None).unwrap();
        let r = check_midpoint(&g, &s, 2, 1).unwrap();
        assert_eq!((r.lhs, r.rhs, r.verdict), (12, 12, Verdict::Equality));
        let r = check_midpoint(&g, &s, 2, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Equality);
        let c6 = cycle(6);
        let r = check_midpoint(&c6, &spectrum(&c6, Method::Flow, None).unwrap(), 1, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (6, 6));
        assert!(matches!(
            check_midpoint(&g, &s, 1, 2),
            Err(CheckError::IndexOutOfRange { .. })
        ));
        let partial = fake(vec![0, 3], 9);
        assert!(check_midpoint(&g, &partial, 1, 1).is_err());
    }

    #[test]
    fn nearly_bipartite_examples() {
        let c5 = cycle(5);
        let s = spectrum(&c5, Method::Oracle, None).unwrap();
        let r = check_nearly_bipartite(&c5, &s).unwrap();
        assert_eq!(r.b, Some(1));
        assert_ne!(r.verdict, Verdict::Violated);
        // k = 1: 2 >= floor(4 / 2), tight
        assert_eq!((r.k, r.lhs, r.rhs), (Some(1), 2, 2));
        let f = two_triangles();
        let s = spectrum(&f, Method::Oracle, None).unwrap();
        assert_eq!(
            check_nearly_bipartite(&f, &s),
            Err(CheckError::NotNearlyBipartite { b: 2 })
        );
    }

    #[test]
    fn b_conjecture_examples() {
        let f = two_triangles();
        let s = spectrum(&f, Method::Oracle, None).unwrap();
        let r = check_b_conjecture(&f, &s, 2, false).unwrap();
        assert_ne!(r.verdict, Verdict::Violated);
        // k = 2, i = 1: 10 >= 3 + 7 - 2
        assert_eq!(2 * s.values[2], 10);
        assert_eq!(s.values[1] + s.values[3] - 2, 8);
        let c5 = cycle(5);
        let s = spectrum(&c5, Method::Oracle, None).unwrap();
        assert_ne!(
            check_b_conjecture(&c5, &s, 1, false).unwrap().verdict,
            Verdict::Violated
        );
        assert_ne!(check_b_conjecture(&c5, &s, 1, true).unwrap().verdict, Verdict::Violated);
    }

    #[test]
    fn cubic_examples() {
        let g = k33();
        let s = spectrum(&g, Method::Flow, None).unwrap();
        let r = check_cubic_bound(&g, &s).unwrap();
        assert_eq!((r.lhs, r.rhs, r.verdict), (24, 24, Verdict::Equality));
        let k4 = g_of(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        let s = spectrum(&k4, Method::Oracle, None).unwrap();
        let r = check_cubic_bound(&k4, &s).unwrap();
        assert_eq!((r.lhs, r.rhs), (16, 16));
        assert_eq!(check_cubic_bound(&cycle(4), &s), Err(CheckError::NotCubic));
    }

    #[test]
    fn rule_names_parse() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
            let json = serde_json::to_string(&r).unwrap();
            assert_eq!(json, format!("\"{}\"", r.name()));
        }
    }
}
