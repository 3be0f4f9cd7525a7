//! Exact maximum k-edge-colorable subgraphs of small loopless multigraphs.

pub mod claims;
pub mod cli;
pub mod edge_color;
pub mod genio;
pub mod graph;
pub mod solver;
pub mod spectrum;
