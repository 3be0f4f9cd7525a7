//! Self-contained solve certificates.
//!
//! A certificate is pretty-printed JSON holding the graph, the claimed
//! subgraph, an explicit coloring and a SHA-256 digest of everything else.
//! Verification re-checks the coloring from scratch and never calls a
//! solver.

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::GraphRecord;
use crate::edge_color::{verify_coloring, Color, Violation};
use crate::graph::{EdgeId, EdgeSubgraph, MultiGraph, Vertex};
use crate::solver::{Method, SolveResult, SolveStats};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema: u32,
    pub tool: String,
    pub graph: GraphRecord,
    pub k: usize,
    pub nu: usize,
    pub subgraph: Vec<EdgeId>,
    /// `(edge, color)` pairs in ascending edge order.
    pub coloring: Vec<(EdgeId, Color)>,
    pub method: Method,
    pub stats: SolveStats,
    pub seed: Option<u64>,
    /// Hex SHA-256 of the compact JSON of this record with an empty digest.
    pub digest: String,
}

impl Certificate {
    pub fn new(r: &SolveResult, g: &MultiGraph, seed: Option<u64>) -> Self {
        let coloring = r
            .coloring
            .as_slice()
            .iter()
            .enumerate()
            .filter_map(|(e, c)| c.map(|c| (e, c)))
            .collect();
        let mut cert = Certificate {
            schema: CERTIFICATE_SCHEMA,
            tool: format!("kecs {}", env!("CARGO_PKG_VERSION")),
            graph: GraphRecord::from(g),
            k: r.k,
            nu: r.nu,
            subgraph: r.subgraph.ids().collect(),
            coloring,
            method: r.method,
            stats: r.stats,
            seed,
            digest: String::new(),
        };
        cert.digest = cert.compute_digest();
        cert
    }

    pub fn compute_digest(&self) -> String {
        let mut bare = self.clone();
        bare.digest.clear();
        let bytes = serde_json::to_vec(&bare).expect("certificate serializes");
        Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

pub fn emit_certificate(r: &SolveResult, g: &MultiGraph, seed: Option<u64>) -> String {
    Certificate::new(r, g, seed).to_text()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertViolation {
    Malformed(String),
    Schema(u32),
    DigestMismatch,
    Graph(String),
    SubgraphEdgeOutOfRange(EdgeId),
    DuplicateSubgraphEdge(EdgeId),
    NuMismatch { nu: usize, subgraph: usize },
    DegreeExceedsK { vertex: Vertex, degree: usize, k: usize },
    ColoringEdgeOutOfRange(EdgeId),
    DuplicateColoringEntry(EdgeId),
    Coloring(Violation),
}

impl fmt::Display for CertViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertViolation::Malformed(m) => write!(f, "malformed certificate: {m}"),
            CertViolation::Schema(s) => write!(f, "unsupported schema version {s}"),
            CertViolation::DigestMismatch => f.write_str("digest does not match contents"),
            CertViolation::Graph(m) => write!(f, "invalid graph: {m}"),
            CertViolation::SubgraphEdgeOutOfRange(e) => write!(f, "subgraph edge {e} does not exist"),
            CertViolation::DuplicateSubgraphEdge(e) => write!(f, "subgraph lists edge {e} twice"),
            CertViolation::NuMismatch { nu, subgraph } => {
                write!(f, "nu = {nu} but the subgraph has {subgraph} edges")
            }
            CertViolation::DegreeExceedsK { vertex, degree, k } => {
                write!(f, "vertex {vertex} has degree {degree} > k = {k} in the subgraph")
            }
            CertViolation::ColoringEdgeOutOfRange(e) => write!(f, "coloring names edge {e}, which does not exist"),
            CertViolation::DuplicateColoringEntry(e) => write!(f, "coloring lists edge {e} twice"),
            CertViolation::Coloring(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub certificate: Option<Certificate>,
    pub violations: Vec<CertViolation>,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Parses and re-checks a certificate.
pub fn verify_certificate(text: &str) -> CertificateCheck {
    let cert: Certificate = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(e) => {
            return CertificateCheck {
                certificate: None,
                violations: vec![CertViolation::Malformed(e.to_string())],
            }
        }
    };
    let violations = check(&cert);
    CertificateCheck {
        certificate: Some(cert),
        violations,
    }
}

fn check(cert: &Certificate) -> Vec<CertViolation> {
    let mut out = Vec::new();
    if cert.schema != CERTIFICATE_SCHEMA {
        out.push(CertViolation::Schema(cert.schema));
    }
    if cert.compute_digest() != cert.digest {
        out.push(CertViolation::DigestMismatch);
    }
    let g = match cert.graph.to_graph() {
        Ok(g) => g,
        Err(e) => {
            out.push(CertViolation::Graph(e.to_string()));
            return out;
        }
    };
    let mut h = EdgeSubgraph::empty(&g);
    for &e in &cert.subgraph {
        if e >= g.m() {
            out.push(CertViolation::SubgraphEdgeOutOfRange(e));
        } else if !h.insert(&g, e) {
            out.push(CertViolation::DuplicateSubgraphEdge(e));
        }
    }
    if cert.nu != cert.subgraph.len() {
        out.push(CertViolation::NuMismatch {
            nu: cert.nu,
            subgraph: cert.subgraph.len(),
        });
    }
    for v in 0..g.n() {
        if h.degree(v) > cert.k {
            out.push(CertViolation::DegreeExceedsK {
                vertex: v,
                degree: h.degree(v),
                k: cert.k,
            });
        }
    }
    let mut colors = vec![None; g.m()];
    let mut seen = HashSet::new();
    for &(e, c) in &cert.coloring {
        if e >= g.m() {
            out.push(CertViolation::ColoringEdgeOutOfRange(e));
        } else if !seen.insert(e) {
            out.push(CertViolation::DuplicateColoringEntry(e));
        } else {
            colors[e] = Some(c);
        }
    }
    out.extend(
        verify_coloring(&g, &h, &colors, cert.k)
            .violations
            .into_iter()
            .map(CertViolation::Coloring),
    );
    out
}

/// Byte range of the `coloring` array in certificate text.
pub fn coloring_span(text: &str) -> Option<Range<usize>> {
    let key = text.find("\"coloring\"")?;
    let open = key + text[key..].find('[')?;
    let mut depth = 0usize;
    for (i, b) in text.bytes().enumerate().skip(open) {
        match b {
            b'[' => depth += 1,
            b']' => {
                depth -= 1;
                if depth == 0 {
                    return Some(open..i + 1);
                }
            }
            _ => {}
        }
    }
    None
}
