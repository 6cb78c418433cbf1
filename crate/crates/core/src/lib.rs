//! Hourglass analysis of hierarchical dependency networks.
//!
//! The pipeline: read a raw digraph, condense its SCCs into a DAG ([`graph`]), count
//! ST-paths through every vertex ([`centrality`]), find the smallest vertex set covering
//! most paths ([`core_id`]), and compare that core against the core of the flattened
//! network ([`metrics`]). [`generative`] holds the reuse-preference and edge-copying
//! network models used to explain and fit the effect, and [`io`] the file formats.
//!
//! ```
//! use hourglass::{build_raw, condense, h_score, TiePolicy};
//!
//! let raw = build_raw(&[("s1", "a"), ("s2", "a"), ("a", "t1"), ("a", "t2")])?;
//! let (network, _) = condense(&raw)?;
//! let report = h_score(&network, 0.9, TiePolicy::Deterministic)?;
//! assert_eq!((report.core_size, report.flat_core_size, report.h_score), (1, 2, 0.5));
//! # Ok::<(), hourglass::Error>(())
//! ```

pub mod centrality;
pub mod cli;
pub mod core_id;
pub mod error;
pub mod generative;
pub mod graph;
pub mod io;
pub mod metrics;

pub use centrality::{avg_st_path_length, compute_path_stats, location, PathStats};
pub use core_id::{
    brute_force_core, coverage, enumerate_cores, greedy_core, identify_pes, jaccard_core_similarity, Core,
    CoreElement, ElementKind, TiePolicy,
};
pub use error::{Error, Result};
pub use graph::{build_raw, classify, condense, exclude_vertices, largest_wcc, DependencyNetwork, RawDigraph, VertexClass};
pub use metrics::{flatten, h_score, HourglassReport};
