//! Published trace counts for the standard test graphs.

use crate::graph::NamedGraph;
use crate::trace::{EnumerationConfig, Orientation};

/// One published count of canonical traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownCount {
    pub graph: NamedGraph,
    pub config: EnumerationConfig,
    pub expected: u64,
    /// Takes minutes or more; skipped unless asked for.
    pub slow: bool,
}

const fn row(graph: NamedGraph, orientation: Orientation, expected: u64, slow: bool) -> KnownCount {
    KnownCount {
        graph,
        config: EnumerationConfig {
            kind: crate::trace::TraceKind::Strong,
            orientation,
        },
        expected,
        slow,
    }
}

use NamedGraph::*;
use Orientation::{Antiparallel as Anti, Any, Parallel as Par};

/// Strong trace counts (all, antiparallel, parallel) on platonic solids,
/// prisms, the 4-pyramid and the 3-bipyramid.
pub const KNOWN_COUNTS: &[KnownCount] = &[
    row(Tetrahedron, Any, 3, false),
    row(Tetrahedron, Par, 0, false),
    row(Cube, Any, 40, false),
    row(Cube, Par, 0, false),
    row(Octahedron, Any, 21479, false),
    row(Octahedron, Par, 262, false),
    row(Dodecahedron, Any, 2532008, true),
    row(Dodecahedron, Par, 0, false),
    row(Prism(3), Any, 25, false),
    row(Prism(3), Anti, 2, false),
    row(Prism(4), Any, 40, false),
    row(Prism(4), Anti, 0, false),
    row(Prism(5), Any, 634, false),
    row(Prism(5), Anti, 10, false),
    row(Prism(6), Any, 3604, false),
    row(Prism(6), Anti, 0, false),
    row(Prism(7), Any, 21925, false),
    row(Prism(7), Anti, 76, false),
    row(Prism(8), Any, 134008, true),
    row(Prism(8), Anti, 0, true),
    row(Prism(9), Any, 833685, true),
    row(Prism(9), Anti, 536, true),
    row(Prism(10), Any, 5212520, true),
    row(Prism(10), Anti, 0, true),
    row(Pyramid(4), Any, 52, false),
    row(Pyramid(4), Anti, 4, false),
    row(Bipyramid(3), Any, 470, false),
    row(Bipyramid(3), Anti, 0, false),
];
