//! Orderly enumeration of canonical double traces.
//!
//! The search extends the prefix `(0, 1)` one vertex at a time. A step is
//! taken only if it keeps every local constraint of the configured kind and
//! orientation, and if no element of the trace symmetry group is already
//! known to map the prefix to something lexicographically smaller. Among
//! candidate vertices related by an automorphism fixing the prefix, only the
//! smallest is tried. Complete traces are checked once more against the
//! exact canonicity test before they are reported.

mod feasibility;
mod search;
mod state;
mod symmetry;

use log::warn;

pub use feasibility::{
    admits_antiparallel_strong, admits_d_stable, admits_parallel_strong,
    SPANNING_TREE_EDGE_LIMIT,
};
pub use state::PartialTrace;
pub use symmetry::{Determinacy, RetainedSymmetries, SymmetryTables};

use crate::automorphism::{automorphisms, AutGroup, SymmetryElement};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::trace::{DoubleTrace, EnumerationConfig, TraceKind};
use search::Run;

/// Knobs that change how the search runs but never what it returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Symmetry pruning and per-orbit candidate reduction. When off, every
    /// simple trace is generated and filtered by the exact canonicity test.
    pub symmetry: bool,
    /// Re-check every emitted trace with the trace-model predicates.
    pub verify: bool,
    /// Reject prefixes whose unused edges are no longer reachable.
    pub lookahead: bool,
    /// Worker threads; `None` uses the global rayon pool, `Some(1)` runs
    /// sequentially.
    pub jobs: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            symmetry: true,
            verify: true,
            lookahead: false,
            jobs: None,
        }
    }
}

impl EnumerationOptions {
    pub fn sequential() -> Self {
        EnumerationOptions {
            jobs: Some(1),
            ..Self::default()
        }
    }

    pub(crate) fn effective_jobs(&self) -> usize {
        #[cfg(feature = "parallel")]
        {
            self.jobs.unwrap_or_else(rayon::current_num_threads).max(1)
        }
        #[cfg(not(feature = "parallel"))]
        {
            1
        }
    }
}

/// Enumerates one canonical representative per equivalence class of traces
/// of a given kind.
#[derive(Debug)]
pub struct Enumerator<'g> {
    graph: &'g Graph,
    config: EnumerationConfig,
    group: AutGroup,
    options: EnumerationOptions,
}

impl<'g> Enumerator<'g> {
    pub fn new(graph: &'g Graph, config: EnumerationConfig) -> Result<Self> {
        Self::with_group(graph, config, automorphisms(graph))
    }

    /// Uses a precomputed automorphism group.
    pub fn with_group(graph: &'g Graph, config: EnumerationConfig, group: AutGroup) -> Result<Self> {
        if !graph.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if let TraceKind::Stable(d) = config.kind {
            if d == 0 {
                return Err(Error::InvalidParameter("d must be at least 1".into()));
            }
            if !admits_d_stable(graph, d) {
                warn!(
                    "d = {d} exceeds the minimum degree {}; no {d}-stable trace exists",
                    graph.min_degree()
                );
            }
        }
        Ok(Enumerator {
            graph,
            config,
            group,
            options: EnumerationOptions::default(),
        })
    }

    pub fn options(mut self, options: EnumerationOptions) -> Self {
        self.options = options;
        self
    }

    pub fn group(&self) -> &AutGroup {
        &self.group
    }

    fn run(&self) -> Run<'_> {
        Run {
            graph: self.graph,
            config: self.config,
            group: &self.group,
            tables: SymmetryTables::new(&self.group, 2 * self.graph.m()),
            options: self.options,
        }
    }

    /// All canonical traces, sorted lexicographically.
    pub fn traces(&self) -> Result<Vec<DoubleTrace>> {
        self.run().collect()
    }

    pub fn count(&self) -> Result<u64> {
        self.run().count()
    }
}

/// Canonical traces of `graph` of the configured kind, sorted.
pub fn enumerate_traces(graph: &Graph, config: EnumerationConfig) -> Result<Vec<DoubleTrace>> {
    Enumerator::new(graph, config)?.traces()
}

/// Number of equivalence classes of traces of the configured kind.
pub fn count_traces(graph: &Graph, config: EnumerationConfig) -> Result<u64> {
    Enumerator::new(graph, config)?.count()
}

/// A queued search node: a prefix and the symmetries retained for it.
#[derive(Debug, Clone)]
pub struct SearchNode<'a> {
    pub trace: PartialTrace<'a>,
    pub symmetries: RetainedSymmetries<'a>,
}

impl<'a> SearchNode<'a> {
    /// The node for the prefix `(0, 1)`, or `None` if that prefix is already
    /// infeasible for the configuration.
    pub fn root(
        graph: &'a Graph,
        config: EnumerationConfig,
        tables: &'a SymmetryTables<'a>,
    ) -> Result<Option<Self>> {
        let mut trace = PartialTrace::empty(graph, config)?;
        trace.push_start(0);
        let full = RetainedSymmetries::full(tables);
        let Pruned::Kept(symmetries) = prune(&full, &trace) else {
            unreachable!("w_0 = 0 is minimal");
        };
        if !trace.push(1) {
            return Ok(None);
        }
        Ok(match prune(&symmetries, &trace) {
            Pruned::Kept(symmetries) => Some(SearchNode { trace, symmetries }),
            Pruned::Rejected(_) => None,
        })
    }
}

/// Neighbors of the last vertex that extend the prefix without breaking
/// edge multiplicity, orientation, or the kind's repetition constraint.
pub fn feasible_neighbors(trace: &PartialTrace<'_>) -> Vec<Vertex> {
    if trace.is_complete() {
        return Vec::new();
    }
    let mut probe = trace.clone();
    let last = probe.last();
    trace
        .graph()
        .neighbors(last)
        .iter()
        .copied()
        .filter(|&v| probe.accepts(v))
        .collect()
}

/// Keeps, for every orbit of `candidates` under the relabelings fixing the
/// prefix pointwise, the vertex giving the smallest extended prefix.
pub fn canonical_extension(
    candidates: &[Vertex],
    retained: &RetainedSymmetries<'_>,
) -> Vec<Vertex> {
    if retained.is_trivial() {
        return candidates.to_vec();
    }
    let mut remaining: Vec<Vertex> = candidates.to_vec();
    let mut out = Vec::new();
    while let Some(&v) = remaining.first() {
        let mut orbit: Vec<Vertex> = retained
            .relabel_stabilizer()
            .map(|pi| retained.group().get(pi).apply(v))
            .collect();
        orbit.push(v);
        let best = orbit.iter().copied().min().unwrap_or(v);
        out.push(best);
        remaining.retain(|u| !orbit.contains(u));
    }
    out.sort_unstable();
    out
}

/// Outcome of [`prune`].
#[derive(Debug, Clone)]
pub enum Pruned<'a> {
    /// Elements that stabilize the prefix or cannot be decided yet.
    Kept(RetainedSymmetries<'a>),
    /// An element maps the prefix to a strictly smaller sequence, so no
    /// completion is canonical.
    Rejected(SymmetryElement),
}

/// Brings `retained` up to date with `extended`, dropping every element
/// whose determined image of the prefix differs from it.
pub fn prune<'a>(retained: &RetainedSymmetries<'a>, extended: &PartialTrace<'_>) -> Pruned<'a> {
    let mut next = retained.clone();
    let seq = extended.compact();
    for p in next.processed() + 1..=seq.len() {
        if let Err(witness) = next.advance(&seq[..p]) {
            return Pruned::Rejected(witness);
        }
    }
    Pruned::Kept(next)
}

/// Expands `node` by one vertex, appending every surviving child to `queue`.
pub fn extend_feasibly<'a>(node: &SearchNode<'a>, queue: &mut Vec<SearchNode<'a>>) {
    let feasible = feasible_neighbors(&node.trace);
    for v in canonical_extension(&feasible, &node.symmetries) {
        let mut trace = node.trace.clone();
        if !trace.push(v) {
            continue;
        }
        if let Pruned::Kept(symmetries) = prune(&node.symmetries, &trace) {
            queue.push(SearchNode { trace, symmetries });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, NamedGraph};
    use crate::trace::{is_canonical, Orientation};

    fn c3() -> Graph {
        parse_edge_list("0 1\n1 2\n2 0").unwrap()
    }

    #[test]
    fn k4_root_candidates() {
        let g = NamedGraph::Tetrahedron.build().unwrap();
        let group = automorphisms(&g);
        let tables = SymmetryTables::new(&group, 12);
        let root = SearchNode::root(&g, EnumerationConfig::any(), &tables)
            .unwrap()
            .unwrap();
        let feasible = feasible_neighbors(&root.trace);
        assert_eq!(feasible, vec![0, 2, 3]);
        assert_eq!(canonical_extension(&feasible, &root.symmetries), vec![0, 2]);
        assert_eq!(canonical_extension(&[3], &root.symmetries), vec![2]);

        let mut queue = Vec::new();
        extend_feasibly(&root, &mut queue);
        let prefixes: Vec<_> = queue.iter().map(|n| n.trace.seq()).collect();
        assert_eq!(prefixes, vec![vec![0, 1, 0], vec![0, 1, 2]]);
    }

    #[test]
    fn parallel_c3_feasible() {
        let g = c3();
        let cfg = EnumerationConfig::any().with_orientation(Orientation::Parallel);
        let mut t = PartialTrace::new(&g, cfg).unwrap();
        for v in [2, 0, 1] {
            assert!(t.push(v));
        }
        assert_eq!(feasible_neighbors(&t), vec![2]);
    }

    #[test]
    fn prune_rules() {
        let g = NamedGraph::Tetrahedron.build().unwrap();
        let group = automorphisms(&g);
        let tables = SymmetryTables::new(&group, 12);
        let root = SearchNode::root(&g, EnumerationConfig::any(), &tables)
            .unwrap()
            .unwrap();
        let elements = root.symmetries.elements();
        assert!(elements
            .iter()
            .any(|(e, d)| e == &SymmetryElement::identity(4) && *d == Determinacy::Stabilizing));
        // Shifts reading beyond the prefix stay, undetermined.
        assert!(elements.iter().any(|(e, d)| e.pi.is_identity()
            && e.shift == 5
            && !e.reversed
            && *d == Determinacy::Undetermined));
        // A relabeling moving position 2 is dropped or rejects the prefix.
        let mut t = root.trace.clone();
        assert!(t.push(3));
        assert!(matches!(prune(&root.symmetries, &t), Pruned::Rejected(_)));
        let mut t = root.trace.clone();
        assert!(t.push(2));
        let Pruned::Kept(kept) = prune(&root.symmetries, &t) else {
            panic!("0 1 2 is extendable");
        };
        assert!(kept.count() <= root.symmetries.count());
        for (e, _) in kept.elements() {
            if e.shift == 0 && !e.reversed {
                assert!((0..3).all(|v| e.pi.apply(v) == v), "{e:?}");
            }
        }
    }

    #[test]
    fn reversal_witness_on_c3() {
        // Some rotation or reversal of this trace starts 0 1 0.
        let g = c3();
        let group = automorphisms(&g);
        let w = DoubleTrace::new(&[0, 1, 2, 0, 2, 1]);
        assert!(!is_canonical(&w, &group));
        let tables = SymmetryTables::new(&group, 6);
        let mut sym = RetainedSymmetries::full(&tables);
        let seq = w.as_compact();
        let mut rejected = false;
        for p in 1..=seq.len() {
            if sym.advance(&seq[..p]).is_err() {
                rejected = true;
                break;
            }
        }
        assert!(rejected);
    }

    #[test]
    fn small_counts() {
        let g = c3();
        let all = enumerate_traces(&g, EnumerationConfig::any()).unwrap();
        assert!(all.iter().all(|t| t.vertices().take(2).eq([0, 1])));
        let strong = count_traces(&g, EnumerationConfig::strong()).unwrap();
        assert_eq!(strong, 1);
        let g = NamedGraph::Tetrahedron.build().unwrap();
        assert_eq!(count_traces(&g, EnumerationConfig::strong()).unwrap(), 3);
    }

    #[test]
    fn single_edge_graph() {
        let g = parse_edge_list("0 1").unwrap();
        let traces = enumerate_traces(&g, EnumerationConfig::strong()).unwrap();
        assert_eq!(traces, vec![DoubleTrace::new(&[0, 1])]);
    }

    #[test]
    fn rejects_bad_configs() {
        let g = parse_edge_list("0 2\n2 1").unwrap();
        assert!(matches!(
            enumerate_traces(&g, EnumerationConfig::any()),
            Err(Error::NotNormalized)
        ));
        let g = c3();
        let cfg = EnumerationConfig::new(TraceKind::Stable(0), Orientation::Any);
        assert!(enumerate_traces(&g, cfg).is_err());
        // Above the minimum degree, stability coincides with strongness.
        let cfg = EnumerationConfig::new(TraceKind::Stable(3), Orientation::Any);
        assert_eq!(
            enumerate_traces(&g, cfg).unwrap(),
            enumerate_traces(&g, EnumerationConfig::strong()).unwrap()
        );
    }
}
