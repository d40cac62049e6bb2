//! Enumeration of non-equivalent double traces of graphs.
//!
//! A double trace is a closed walk traversing every edge exactly twice. Two
//! traces are equivalent when one is obtained from the other by rotation,
//! reversal and relabeling through a graph automorphism. This crate lists
//! exactly one representative per class (the lexicographically smallest),
//! optionally restricted to strong or d-stable traces and to parallel or
//! antiparallel ones.
//!
//! ```
//! use tracenum::{count_traces, EnumerationConfig, NamedGraph};
//!
//! let tetrahedron = NamedGraph::Tetrahedron.build().unwrap();
//! assert_eq!(count_traces(&tetrahedron, EnumerationConfig::strong()).unwrap(), 3);
//! ```

pub mod automorphism;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod known;
pub mod oracle;
pub mod trace;

pub use automorphism::{apply_symmetry, automorphisms, AutGroup, Permutation, SymmetryElement};
pub use enumerate::{
    admits_antiparallel_strong, admits_d_stable, admits_parallel_strong, count_traces,
    enumerate_traces, EnumerationOptions, Enumerator,
};
pub use error::{Error, Result};
pub use graph::{
    named_graph, normalize_base_edge, parse_edge_list, parse_graph6, Graph, NamedGraph, Vertex,
};
pub use trace::{DoubleTrace, EnumerationConfig, Orientation, OrientationClass, TraceKind};
