//! Double traces and the predicates defined on them.
//!
//! A double trace of a graph with `m` edges is a closed walk `w_0 .. w_{2m-1}`
//! (indices modulo `2m`) using every edge exactly twice. At each vertex `v`
//! the walk pairs the predecessor and successor of every visit; these pairs
//! form the transition structure at `v`, and its components are exactly the
//! minimal sets `N` for which the walk leaves `v` into `N` whenever it enters
//! from `N`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automorphism::{source_index, AutGroup};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A closed walk stored as its vertex sequence `w_0 .. w_{L-1}`; the closing
/// step back to `w_0` is implicit. The derived ordering is the
/// lexicographic order on sequences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vertex>", from = "Vec<Vertex>")]
pub struct DoubleTrace {
    seq: Box<[u16]>,
}

impl DoubleTrace {
    pub fn new(seq: &[Vertex]) -> Self {
        DoubleTrace {
            seq: seq
                .iter()
                .map(|&v| u16::try_from(v).expect("vertex label fits in u16"))
                .collect(),
        }
    }

    pub(crate) fn from_compact(seq: &[u16]) -> Self {
        DoubleTrace { seq: seq.into() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `w_i` with `i` taken modulo the length.
    #[inline]
    pub fn at(&self, i: usize) -> Vertex {
        self.seq[i % self.seq.len()] as Vertex
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.seq.iter().map(|&v| v as Vertex)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    #[inline]
    pub fn as_compact(&self) -> &[u16] {
        &self.seq
    }

    /// Space-separated labels, the text serialization.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Debug for DoubleTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleTrace({})", self.to_line())
    }
}

impl fmt::Display for DoubleTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl From<DoubleTrace> for Vec<Vertex> {
    fn from(t: DoubleTrace) -> Self {
        t.to_vec()
    }
}

impl From<Vec<Vertex>> for DoubleTrace {
    fn from(v: Vec<Vertex>) -> Self {
        DoubleTrace::new(&v)
    }
}

impl FromStr for DoubleTrace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let seq = s
            .split_whitespace()
            .map(|t| {
                t.parse::<u16>().map(Vertex::from).map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("`{t}` is not a vertex label"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DoubleTrace::new(&seq))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "d")]
pub enum TraceKind {
    /// Every double trace.
    Any,
    /// No repetition at any vertex.
    Strong,
    /// Every repetition set has more than `d` elements.
    Stable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Any,
    Parallel,
    Antiparallel,
}

/// Which traces to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub kind: TraceKind,
    pub orientation: Orientation,
}

impl EnumerationConfig {
    pub const fn new(kind: TraceKind, orientation: Orientation) -> Self {
        EnumerationConfig { kind, orientation }
    }

    pub const fn strong() -> Self {
        Self::new(TraceKind::Strong, Orientation::Any)
    }

    pub const fn any() -> Self {
        Self::new(TraceKind::Any, Orientation::Any)
    }

    pub fn with_orientation(self, orientation: Orientation) -> Self {
        EnumerationConfig { orientation, ..self }
    }

    /// Whether a transition structure with the given (closed) component
    /// sizes is allowed at a vertex of degree `degree`.
    pub fn allows_components(&self, sizes: &[usize], degree: usize) -> bool {
        match self.kind {
            TraceKind::Any => true,
            TraceKind::Strong => sizes.len() == 1 || sizes.iter().all(|&s| s == degree),
            TraceKind::Stable(d) => sizes.len() == 1 || sizes.iter().all(|&s| s > d),
        }
    }
}

impl fmt::Display for EnumerationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TraceKind::Any => write!(f, "double")?,
            TraceKind::Strong => write!(f, "strong")?,
            TraceKind::Stable(d) => write!(f, "stable({d})")?,
        }
        match self.orientation {
            Orientation::Any => Ok(()),
            Orientation::Parallel => write!(f, "+parallel"),
            Orientation::Antiparallel => write!(f, "+antiparallel"),
        }
    }
}

/// True iff `seq` has length `2m`, consecutive vertices (cyclically) are
/// adjacent, and every edge is used exactly twice.
pub fn is_double_trace(graph: &Graph, seq: &[Vertex]) -> bool {
    let len = seq.len();
    if len != 2 * graph.m() || seq.iter().any(|&v| v >= graph.n()) {
        return false;
    }
    let mut uses = vec![0u8; graph.m()];
    for i in 0..len {
        match graph.edge_id(seq[i], seq[(i + 1) % len]) {
            Some(e) => uses[e.index()] += 1,
            None => return false,
        }
    }
    uses.iter().all(|&c| c == 2)
}

/// Partition of `N(v)` induced by the transitions at `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionStructure {
    pub vertex: Vertex,
    /// Components, each sorted, ordered by smallest element.
    pub components: Vec<Vec<Vertex>>,
    /// Number of transitions (visits) that produced the structure.
    pub transitions: usize,
}

impl TransitionStructure {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

pub fn transition_components(
    graph: &Graph,
    trace: &DoubleTrace,
    v: Vertex,
) -> Result<TransitionStructure> {
    let nbrs = graph.neighbors(v);
    let local = |u: Vertex| nbrs.binary_search(&u).expect("trace steps along edges");
    let mut parent: Vec<usize> = (0..nbrs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let len = trace.len();
    let mut transitions = 0;
    for i in 0..len {
        if trace.at(i) != v {
            continue;
        }
        transitions += 1;
        let a = find(&mut parent, local(trace.at(i + len - 1)));
        let b = find(&mut parent, local(trace.at(i + 1)));
        parent[a] = b;
    }
    if transitions == 0 {
        return Err(Error::InvalidParameter(format!("vertex {v} is not visited")));
    }
    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    let mut root_slot = vec![usize::MAX; nbrs.len()];
    for (i, &u) in nbrs.iter().enumerate() {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(u);
    }
    Ok(TransitionStructure {
        vertex: v,
        components: groups,
        transitions,
    })
}

/// The minimal repetition sets at `v`: the components of the transition
/// structure when there are at least two, otherwise none.
pub fn repetitions(graph: &Graph, trace: &DoubleTrace, v: Vertex) -> Vec<Vec<Vertex>> {
    match transition_components(graph, trace, v) {
        Ok(ts) if ts.components.len() >= 2 => ts.components,
        _ => Vec::new(),
    }
}

pub fn is_strong(graph: &Graph, trace: &DoubleTrace) -> bool {
    (0..graph.n()).all(|v| repetitions(graph, trace, v).is_empty())
}

pub fn is_d_stable(graph: &Graph, trace: &DoubleTrace, d: usize) -> bool {
    (0..graph.n()).all(|v| repetitions(graph, trace, v).iter().all(|n| n.len() > d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationClass {
    Parallel,
    Antiparallel,
    Mixed,
}

/// Traversal directions of one edge, in trace order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationRecord {
    pub edge: (Vertex, Vertex),
    pub traversals: Vec<(Vertex, Vertex)>,
}

impl OrientationRecord {
    pub fn is_parallel(&self) -> bool {
        self.traversals.len() == 2 && self.traversals[0] == self.traversals[1]
    }
}

pub fn orientation_class(
    graph: &Graph,
    trace: &DoubleTrace,
) -> (OrientationClass, Vec<OrientationRecord>) {
    let mut records: Vec<OrientationRecord> = graph
        .edges()
        .iter()
        .map(|&edge| OrientationRecord {
            edge,
            traversals: Vec::with_capacity(2),
        })
        .collect();
    let len = trace.len();
    for i in 0..len {
        let (a, b) = (trace.at(i), trace.at(i + 1));
        if let Some(e) = graph.edge_id(a, b) {
            records[e.index()].traversals.push((a, b));
        }
    }
    let parallel = records.iter().filter(|r| r.is_parallel()).count();
    let class = if parallel == records.len() {
        OrientationClass::Parallel
    } else if parallel == 0 {
        OrientationClass::Antiparallel
    } else {
        OrientationClass::Mixed
    };
    (class, records)
}

/// Kind and orientation predicates of `config` on a complete trace.
pub fn satisfies(graph: &Graph, trace: &DoubleTrace, config: &EnumerationConfig) -> bool {
    let kind_ok = match config.kind {
        TraceKind::Any => true,
        TraceKind::Strong => is_strong(graph, trace),
        TraceKind::Stable(d) => is_d_stable(graph, trace, d),
    };
    kind_ok
        && match config.orientation {
            Orientation::Any => true,
            Orientation::Parallel => orientation_class(graph, trace).0 == OrientationClass::Parallel,
            Orientation::Antiparallel => {
                orientation_class(graph, trace).0 == OrientationClass::Antiparallel
            }
        }
}

pub fn lex_compare(a: &[Vertex], b: &[Vertex]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.cmp(b))
}

/// True iff no element of the trace symmetry group maps `trace` to a
/// lexicographically smaller sequence.
///
/// Every `(π, shift, reversed)` is covered: for a fixed dihedral part the
/// image starts with `π(w_r)`, so only relabelings sending `w_r` into the
/// smallest reachable value need a full comparison.
pub fn is_canonical(trace: &DoubleTrace, group: &AutGroup) -> bool {
    let len = trace.len();
    let w = trace.as_compact();
    let first = w[0] as usize;
    for reversed in [false, true] {
        for shift in 0..len {
            let r0 = source_index(0, shift, reversed, len);
            let x = w[r0] as usize;
            if group.orbit_min(x) < first {
                return false;
            }
            for &idx in group.sending(x, first) {
                let pi = group.get(idx as usize).image();
                for j in 1..len {
                    let image = pi[w[source_index(j, shift, reversed, len)] as usize];
                    match image.cmp(&(w[j] as usize)) {
                        Ordering::Less => return false,
                        Ordering::Greater => break,
                        Ordering::Equal => {}
                    }
                }
            }
        }
    }
    true
}

/// The shortest prefix containing every vertex.
pub fn init_segment(graph: &Graph, trace: &DoubleTrace) -> Vec<Vertex> {
    let mut seen = vec![false; graph.n()];
    let mut remaining = graph.n();
    let mut out = Vec::new();
    for v in trace.vertices() {
        out.push(v);
        if !std::mem::replace(&mut seen[v], true) {
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
    }
    out
}

/// The first `i` vertices, `1 <= i <= len`.
pub fn i_initial(trace: &DoubleTrace, i: usize) -> Result<Vec<Vertex>> {
    if i == 0 || i > trace.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: trace.len(),
        });
    }
    Ok(trace.vertices().take(i).collect())
}
