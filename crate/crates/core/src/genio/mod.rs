//! Reading, writing and generating graphs, certificates and check reports.

pub mod certificate;
pub mod generate;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, MultiGraph, Vertex};
use crate::spectrum::CheckReport;

pub use certificate::{
    coloring_span, emit_certificate, verify_certificate, CertViolation, Certificate, CertificateCheck,
    CERTIFICATE_SCHEMA,
};
pub use generate::{
    gen_named, gen_nearly_bipartite, gen_random_bipartite, gen_random_multigraph, gen_regular_bipartite,
    two_triangles_a2, GenError,
};

/// Plain serializable form of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl From<&MultiGraph> for GraphRecord {
    fn from(g: &MultiGraph) -> Self {
        GraphRecord {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

impl GraphRecord {
    pub fn to_graph(&self) -> Result<MultiGraph, GraphError> {
        MultiGraph::from_edges(self.n, &self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header `p el <n> <m>`")]
    MissingHeader,
    #[error("line {line}: malformed header, expected `p el <n> <m>`")]
    Header { line: usize },
    #[error("line {line}: malformed edge, expected `e <u> <v>`")]
    EdgeLine { line: usize },
    #[error("line {line}: loop at vertex {vertex}, graphs must be loopless")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
}

/// Parses the edge-list format: a `p el <n> <m>` header, then `m` lines
/// `e <u> <v>` with 1-based vertices. Lines starting with `c` and blank
/// lines are ignored. Edge ids follow file order.
pub fn parse_edge_list(text: &str) -> Result<MultiGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::Header { line });
                }
                let fields: Vec<&str> = tok.collect();
                let parsed = match fields.as_slice() {
                    ["el", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or(ParseError::Header { line })?);
            }
            Some("e") => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                let fields: Vec<usize> = tok
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|_| ParseError::EdgeLine { line })?;
                let [u, v] = fields[..] else {
                    return Err(ParseError::EdgeLine { line });
                };
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex: x, n });
                    }
                }
                if u == v {
                    return Err(ParseError::Loop { line, vertex: u });
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => {
                return Err(if header.is_some() {
                    ParseError::EdgeLine { line }
                } else {
                    ParseError::Header { line }
                })
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if m != edges.len() {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(MultiGraph::from_edges(n, &edges).expect("validated above"))
}

pub fn write_edge_list(g: &MultiGraph) -> String {
    let mut out = format!("p el {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Largest vertex count of the short graph6 form.
pub const GRAPH6_MAX_N: usize = 62;

/// Parses one graph in graph6 short form. Edges come out in the order of
/// the upper triangle read column by column.
pub fn parse_graph6(text: &str) -> Result<MultiGraph, ParseError> {
    let err = |m: &str| ParseError::Graph6(m.to_string());
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s).as_bytes();
    let (&first, body) = s.split_first().ok_or_else(|| err("empty input"))?;
    if first == b'~' {
        return Err(err("long form sizes (n > 62) are not supported"));
    }
    if !(63..=126).contains(&first) {
        return Err(err("invalid size byte"));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(ParseError::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    if body.iter().any(|b| !(63..=126).contains(b)) {
        return Err(err("byte outside the printable range 63..=126"));
    }
    let bit = |t: usize| (body[t / 6] - 63) >> (5 - t % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(t) {
                edges.push((i, j));
            }
            t += 1;
        }
    }
    Ok(MultiGraph::from_edges(n, &edges).expect("distinct endpoints"))
}

/// One report per line.
pub fn write_reports(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

pub fn read_reports(text: &str) -> Result<Vec<CheckReport>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
