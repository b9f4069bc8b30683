//! Exact subgraph isomorphism counting on sparse graphs.
//!
//! The pipeline counts occurrences of a small connected motif H in a host
//! graph G in four stages: compute a (|H|+1)-centered coloring of G, walk
//! the color sets of size at most |H| while maintaining the components of
//! their induced subgraphs, build a treedepth decomposition of each
//! component and count motif embeddings with a dynamic program over its
//! forest, then combine the per-set counts by inclusion-exclusion into the
//! exact total. A backtracking counter provides an independent baseline.

pub mod baseline;
pub mod color;
pub mod combine;
pub mod config;
pub mod decompose;
mod dsu;
pub mod error;
pub mod gen;
pub mod graph;
pub mod harness;
pub mod pattern;
pub mod pipeline;

pub use error::{Error, Result};
