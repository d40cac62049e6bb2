//! Brute-force reference enumerator and orbit analysis.
//!
//! Nothing in here calls into the search code or the trace predicates of
//! [`crate::trace`]. Walks are generated by plain backtracking, repetitions
//! are found by trying every vertex subset, and the symmetry group is rebuilt
//! from scratch, so agreement with the enumerator is an independent check.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::automorphism::Permutation;
use crate::enumerate::{EnumerationOptions, Enumerator};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::trace::{DoubleTrace, EnumerationConfig, Orientation, TraceKind};

/// Setting this variable (to anything but `0` or an empty string) lifts the
/// size guards.
pub const GUARD_OVERRIDE_VAR: &str = "TRACE_ENUM_GUARD_OVERRIDE";

/// Largest edge count accepted for [`Scope::AllStarts`].
pub const ALL_STARTS_EDGE_LIMIT: usize = 12;
/// Largest edge count accepted for [`Scope::SimpleOnly`].
pub const SIMPLE_ONLY_EDGE_LIMIT: usize = 15;

/// Which sequences the brute-force enumerator produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Every start vertex and every first step.
    AllStarts,
    /// Only sequences beginning with `0 1`.
    SimpleOnly,
}

/// Subgroups of the trace symmetry group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subgroup {
    /// Relabelings, shifts and reversal together.
    Gamma,
    /// Relabelings by graph automorphisms only.
    Aut,
    /// Identity and reversal.
    Reversal,
    /// Cyclic shifts.
    Shift,
}

impl Subgroup {
    pub const ALL: [Subgroup; 4] = [Subgroup::Gamma, Subgroup::Aut, Subgroup::Reversal, Subgroup::Shift];
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subgroup::Gamma => "gamma",
            Subgroup::Aut => "aut",
            Subgroup::Reversal => "reversal",
            Subgroup::Shift => "shift",
        })
    }
}

impl std::str::FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" | "g" => Ok(Subgroup::Gamma),
            "aut" | "a" => Ok(Subgroup::Aut),
            "reversal" | "r" => Ok(Subgroup::Reversal),
            "shift" | "s" => Ok(Subgroup::Shift),
            other => Err(Error::InvalidParameter(format!("unknown subgroup `{other}`"))),
        }
    }
}

fn guard_lifted() -> bool {
    std::env::var(GUARD_OVERRIDE_VAR).is_ok_and(|v| !v.is_empty() && v != "0")
}

/// Fails with [`Error::SizeGuard`] if `graph` is too large for `scope`.
pub fn check_guard(graph: &Graph, scope: Scope) -> Result<()> {
    let (what, limit) = match scope {
        Scope::AllStarts => ("oracle edge count (all starts)", ALL_STARTS_EDGE_LIMIT),
        Scope::SimpleOnly => ("oracle edge count (simple only)", SIMPLE_ONLY_EDGE_LIMIT),
    };
    if graph.m() > limit && !guard_lifted() {
        return Err(Error::SizeGuard { what, limit, actual: graph.m() });
    }
    Ok(())
}

/// Sequences packed into one integer, most significant vertex first, so
/// integer order is lexicographic order.
#[derive(Debug, Clone, Copy)]
struct Codec {
    bits: u32,
    len: usize,
}

impl Codec {
    fn new(n: usize, len: usize) -> Result<Self> {
        let bits = usize::BITS - n.saturating_sub(1).leading_zeros();
        let bits = bits.max(1);
        if bits as usize * len > 128 {
            return Err(Error::SizeGuard {
                what: "oracle sequence width in bits",
                limit: 128,
                actual: bits as usize * len,
            });
        }
        Ok(Codec { bits, len })
    }

    fn pack(&self, w: &[Vertex]) -> u128 {
        w.iter().fold(0u128, |acc, &v| acc << self.bits | v as u128)
    }

    fn unpack(&self, code: u128, out: &mut Vec<Vertex>) {
        let mask = (1u128 << self.bits) - 1;
        out.clear();
        out.extend((0..self.len).rev().map(|i| (code >> (i as u32 * self.bits) & mask) as Vertex));
    }

    fn trace(&self, code: u128) -> DoubleTrace {
        let mut w = Vec::with_capacity(self.len);
        self.unpack(code, &mut w);
        DoubleTrace::new(&w)
    }
}

/// Every distinct vertex sequence that is a double trace of `graph`
/// satisfying `config`, sorted.
pub fn brute_enumerate(graph: &Graph, config: EnumerationConfig, scope: Scope) -> Result<Vec<DoubleTrace>> {
    check_guard(graph, scope)?;
    let codec = Codec::new(graph.n(), 2 * graph.m())?;
    let codes = closed_walks(graph, codec, config.orientation, scope, |w| kind_holds(graph, w, config.kind));
    Ok(codes.into_iter().map(|c| codec.trace(c)).collect())
}

/// Closed walks using every edge exactly twice, with the orientation rule
/// applied on the second traversal of each edge. Only walks passing `keep`
/// are returned, packed and sorted.
fn closed_walks(
    graph: &Graph,
    codec: Codec,
    orientation: Orientation,
    scope: Scope,
    keep: impl Fn(&[Vertex]) -> bool,
) -> Vec<u128> {
    let n = graph.n();
    let len = 2 * graph.m();
    let mut walker = Walker {
        graph,
        orientation,
        len,
        used: vec![0u8; n * n],
        first_from: vec![usize::MAX; n * n],
        walk: Vec::with_capacity(len),
        out: Vec::new(),
        keep: &keep,
        codec,
    };
    let starts: Vec<(Vertex, Vertex)> = match scope {
        Scope::AllStarts => (0..n)
            .flat_map(|s| graph.neighbors(s).iter().map(move |&t| (s, t)))
            .collect(),
        Scope::SimpleOnly => {
            if graph.is_adjacent(0, 1) {
                vec![(0, 1)]
            } else {
                Vec::new()
            }
        }
    };
    for (s, t) in starts {
        walker.walk.push(s);
        if walker.traverse(s, t) {
            walker.walk.push(t);
            walker.extend();
            walker.walk.pop();
            walker.untraverse(s, t);
        }
        walker.walk.pop();
    }
    walker.out.sort_unstable();
    walker.out
}

struct Walker<'g, 'k> {
    graph: &'g Graph,
    orientation: Orientation,
    len: usize,
    used: Vec<u8>,
    first_from: Vec<usize>,
    walk: Vec<Vertex>,
    out: Vec<u128>,
    keep: &'k dyn Fn(&[Vertex]) -> bool,
    codec: Codec,
}

impl Walker<'_, '_> {
    fn key(&self, u: Vertex, v: Vertex) -> usize {
        u.min(v) * self.graph.n() + u.max(v)
    }

    fn traverse(&mut self, u: Vertex, v: Vertex) -> bool {
        let k = self.key(u, v);
        match self.used[k] {
            0 => {
                self.first_from[k] = u;
            }
            1 => {
                let same = self.first_from[k] == u;
                let allowed = match self.orientation {
                    Orientation::Any => true,
                    Orientation::Parallel => same,
                    Orientation::Antiparallel => !same,
                };
                if !allowed {
                    return false;
                }
            }
            _ => return false,
        }
        self.used[k] += 1;
        true
    }

    fn untraverse(&mut self, u: Vertex, v: Vertex) {
        let k = self.key(u, v);
        self.used[k] -= 1;
    }

    fn extend(&mut self) {
        let last = *self.walk.last().expect("walk is never empty here");
        if self.walk.len() == self.len {
            let first = self.walk[0];
            if self.graph.is_adjacent(last, first) && self.traverse(last, first) {
                if (self.keep)(&self.walk) {
                    self.out.push(self.codec.pack(&self.walk));
                }
                self.untraverse(last, first);
            }
            return;
        }
        for &next in self.graph.neighbors(last) {
            if self.traverse(last, next) {
                self.walk.push(next);
                self.extend();
                self.walk.pop();
                self.untraverse(last, next);
            }
        }
    }
}

/// Size of the smallest nontrivial repetition set anywhere in `walk`, found
/// by trying every proper nonempty subset of every neighborhood. `None` means
/// there is none.
pub fn smallest_repetition(graph: &Graph, walk: &[Vertex]) -> Option<usize> {
    let len = walk.len();
    let mut slot = vec![0usize; graph.n()];
    let mut pairs = Vec::new();
    let mut best: Option<usize> = None;
    for v in 0..graph.n() {
        let nbrs = graph.neighbors(v);
        let deg = nbrs.len();
        assert!(deg < 64, "oracle subset search needs degree below 64");
        for (k, &u) in nbrs.iter().enumerate() {
            slot[u] = k;
        }
        pairs.clear();
        pairs.extend((0..len).filter(|&i| walk[i] == v).map(|i| {
            (slot[walk[(i + len - 1) % len]], slot[walk[(i + 1) % len]])
        }));
        let full = (1u64 << deg) - 1;
        for mask in 1..full {
            let size = mask.count_ones() as usize;
            if best.is_some_and(|b| b <= size) {
                continue;
            }
            if pairs.iter().all(|&(a, b)| (mask >> a & 1) == (mask >> b & 1)) {
                best = Some(size);
            }
        }
    }
    best
}

fn kind_allows(kind: TraceKind, smallest: Option<usize>) -> bool {
    match kind {
        TraceKind::Any => true,
        TraceKind::Strong => smallest.is_none(),
        TraceKind::Stable(d) => smallest.is_none_or(|s| s > d),
    }
}

/// Kind predicate by direct subset search.
pub fn kind_holds(graph: &Graph, walk: &[Vertex], kind: TraceKind) -> bool {
    kind == TraceKind::Any || kind_allows(kind, smallest_repetition(graph, walk))
}

/// True iff `walk` has no nontrivial repetition anywhere, found by trying
/// every proper nonempty neighbor subset.
pub fn is_strong_by_subsets(graph: &Graph, walk: &[Vertex]) -> bool {
    kind_holds(graph, walk, TraceKind::Strong)
}

/// All automorphisms of `graph`, by plain backtracking over partial maps.
pub fn brute_automorphisms(graph: &Graph) -> Vec<Permutation> {
    fn go(graph: &Graph, map: &mut Vec<Vertex>, taken: &mut [bool], out: &mut Vec<Permutation>) {
        let n = graph.n();
        let v = map.len();
        if v == n {
            out.push(Permutation::from_image(map.clone()).expect("map is a bijection"));
            return;
        }
        for img in 0..n {
            if taken[img] || graph.degree(img) != graph.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| graph.is_adjacent(u, v) == graph.is_adjacent(map[u], img));
            if consistent {
                taken[img] = true;
                map.push(img);
                go(graph, map, taken, out);
                map.pop();
                taken[img] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(graph, &mut Vec::new(), &mut vec![false; graph.n()], &mut out);
    out.sort_unstable_by(|a, b| a.image().cmp(b.image()));
    out
}

/// One element of the trace symmetry group, in the oracle's own encoding:
/// the image of `w` is `j -> pi(w[(shift ± j) mod len])`.
#[derive(Clone)]
struct Action<'p> {
    pi: Option<&'p Permutation>,
    shift: usize,
    reversed: bool,
}

impl Action<'_> {
    fn apply(&self, w: &[Vertex], out: &mut Vec<Vertex>) {
        let len = w.len();
        out.clear();
        out.extend((0..len).map(|j| {
            let src = if self.reversed { (self.shift + len - j) % len } else { (self.shift + j) % len };
            let x = w[src];
            self.pi.map_or(x, |p| p.apply(x))
        }));
    }
}

fn actions<'p>(auts: &'p [Permutation], len: usize, subgroup: Subgroup) -> Vec<Action<'p>> {
    let plain = |shift, reversed| Action { pi: None, shift, reversed };
    match subgroup {
        Subgroup::Gamma => auts
            .iter()
            .flat_map(|p| {
                (0..len).flat_map(move |s| {
                    [false, true].map(|r| Action { pi: Some(p), shift: s, reversed: r })
                })
            })
            .collect(),
        Subgroup::Aut => auts.iter().map(|p| Action { pi: Some(p), shift: 0, reversed: false }).collect(),
        Subgroup::Reversal => vec![plain(0, false), plain(0, true)],
        Subgroup::Shift => (0..len).map(|s| plain(s, false)).collect(),
    }
}

/// Order of `subgroup` as a group of transformations of sequences of
/// length `len`.
pub fn subgroup_order(aut_order: usize, len: usize, subgroup: Subgroup) -> usize {
    match subgroup {
        Subgroup::Gamma => aut_order * 2 * len,
        Subgroup::Aut => aut_order,
        Subgroup::Reversal => 2,
        Subgroup::Shift => len,
    }
}

/// One orbit: its size and lexicographically smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub size: usize,
    pub representative: DoubleTrace,
}

/// Partition of a trace set into orbits of one subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub subgroup: Subgroup,
    pub group_order: usize,
    pub total: usize,
    /// Largest orbits first; ties broken by representative.
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }

    pub fn representatives(&self) -> Vec<DoubleTrace> {
        let mut reps: Vec<_> = self.orbits.iter().map(|o| o.representative.clone()).collect();
        reps.sort_unstable();
        reps
    }

    /// `"56 orbits of size 12"` when all orbits have one size, otherwise
    /// `"3 orbits: 288 288 96"`.
    pub fn summary(&self) -> String {
        let sizes = self.sizes();
        let count = sizes.len();
        let noun = if count == 1 { "orbit" } else { "orbits" };
        match sizes.first() {
            None => "0 orbits".to_string(),
            Some(&s) if count > 1 && sizes.iter().all(|&t| t == s) => {
                format!("{count} {noun} of size {s}")
            }
            _ => {
                let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
                format!("{count} {noun}: {}", list.join(" "))
            }
        }
    }
}

fn pack_traces(traces: &[DoubleTrace], auts: &[Permutation]) -> Result<(Codec, Vec<u128>)> {
    let len = traces.first().map_or(0, DoubleTrace::len);
    if let Some(bad) = traces.iter().find(|t| t.len() != len) {
        return Err(Error::LengthMismatch { expected: len, actual: bad.len() });
    }
    let top = traces.iter().flat_map(|t| t.vertices()).max().map_or(0, |v| v + 1);
    let n = top.max(auts.first().map_or(0, Permutation::len));
    let codec = Codec::new(n, len)?;
    let mut codes: Vec<u128> = traces.iter().map(|t| codec.pack(&t.to_vec())).collect();
    codes.sort_unstable();
    codes.dedup();
    Ok((codec, codes))
}

/// Orbits of the packed, sorted set `codes`, as (size, smallest member).
fn partition_codes(codec: Codec, codes: &[u128], acts: &[Action<'_>]) -> Result<Vec<(usize, u128)>> {
    let mut seen = vec![false; codes.len()];
    let mut orbits = Vec::new();
    let (mut w, mut image) = (Vec::with_capacity(codec.len), Vec::with_capacity(codec.len));
    let mut members = Vec::new();
    for i in 0..codes.len() {
        if seen[i] {
            continue;
        }
        codec.unpack(codes[i], &mut w);
        members.clear();
        for act in acts {
            act.apply(&w, &mut image);
            let j = codes.binary_search(&codec.pack(&image)).map_err(|_| Error::NotClosed)?;
            if !seen[j] {
                seen[j] = true;
                members.push(j);
            }
        }
        // The identity is among the actions, so `i` itself is a member and
        // is the smallest index: everything below it was seen earlier.
        orbits.push((members.len(), codes[i]));
    }
    Ok(orbits)
}

fn report(codec: Codec, codes: &[u128], auts: &[Permutation], subgroup: Subgroup) -> Result<OrbitReport> {
    let acts = actions(auts, codec.len, subgroup);
    let mut orbits: Vec<Orbit> = partition_codes(codec, codes, &acts)?
        .into_iter()
        .map(|(size, rep)| Orbit { size, representative: codec.trace(rep) })
        .collect();
    orbits.sort_by(|a, b| b.size.cmp(&a.size).then_with(|| a.representative.cmp(&b.representative)));
    Ok(OrbitReport {
        subgroup,
        group_order: subgroup_order(auts.len(), codec.len, subgroup),
        total: codes.len(),
        orbits,
    })
}

/// Splits `traces` into orbits of `subgroup`, where `auts` lists the graph
/// automorphisms. Every image of every element is computed, and an image
/// outside the set is an error.
pub fn orbit_partition(traces: &[DoubleTrace], auts: &[Permutation], subgroup: Subgroup) -> Result<OrbitReport> {
    let (codec, codes) = pack_traces(traces, auts)?;
    report(codec, &codes, auts, subgroup)
}

/// Orbit reports for all four subgroups.
pub fn orbit_statistics(traces: &[DoubleTrace], auts: &[Permutation]) -> Result<Vec<OrbitReport>> {
    let (codec, codes) = pack_traces(traces, auts)?;
    Subgroup::ALL.iter().map(|&s| report(codec, &codes, auts, s)).collect()
}

/// Graphviz text with one node per trace and an edge between two traces
/// whenever some element of `subgroup` maps one to the other.
pub fn emit_orbit_graph(traces: &[DoubleTrace], auts: &[Permutation], subgroup: Subgroup) -> Result<String> {
    let (codec, codes) = pack_traces(traces, auts)?;
    let acts = actions(auts, codec.len, subgroup);
    let mut edges = BTreeSet::new();
    let (mut w, mut image) = (Vec::new(), Vec::new());
    for (i, &code) in codes.iter().enumerate() {
        codec.unpack(code, &mut w);
        for act in &acts {
            act.apply(&w, &mut image);
            let j = codes.binary_search(&codec.pack(&image)).map_err(|_| Error::NotClosed)?;
            if i < j {
                edges.insert((i, j));
            }
        }
    }
    let mut dot = String::new();
    writeln!(dot, "graph orbits_{subgroup} {{").unwrap();
    writeln!(dot, "  node [shape=point];").unwrap();
    for (i, &code) in codes.iter().enumerate() {
        writeln!(dot, "  t{i} [label=\"{}\"];", codec.trace(code).to_line()).unwrap();
    }
    for (i, j) in edges {
        writeln!(dot, "  t{i} -- t{j};").unwrap();
    }
    dot.push_str("}\n");
    Ok(dot)
}

/// Outcome of comparing the enumerator with the oracle for one setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: EnumerationConfig,
    /// Number of oracle orbit representatives.
    pub expected: usize,
    /// Number of traces the enumerator produced.
    pub actual: usize,
    /// Representatives the enumerator did not produce.
    pub missing: Vec<DoubleTrace>,
    /// Enumerator output that is not an oracle representative.
    pub extra: Vec<DoubleTrace>,
}

impl VerifyReport {
    pub fn is_equal(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_equal() { "equal" } else { "MISMATCH" };
        write!(
            f,
            "{}: {verdict} (oracle {}, enumerator {}, missing {}, extra {})",
            self.config,
            self.expected,
            self.actual,
            self.missing.len(),
            self.extra.len()
        )
    }
}

/// Every double trace of one graph from every start, computed once and then
/// filtered per setting. Useful when checking many settings on one graph.
pub struct OraclePool<'g> {
    graph: &'g Graph,
    auts: Vec<Permutation>,
    codec: Codec,
    walks: Vec<u128>,
    /// Per walk: smallest repetition size (`u8::MAX` for none) and whether
    /// it is parallel, antiparallel, or neither.
    facts: Vec<(u8, Option<bool>)>,
}

impl<'g> OraclePool<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        check_guard(graph, Scope::AllStarts)?;
        let codec = Codec::new(graph.n(), 2 * graph.m())?;
        let walks = closed_walks(graph, codec, Orientation::Any, Scope::AllStarts, |_| true);
        let mut w = Vec::new();
        let facts = walks
            .iter()
            .map(|&c| {
                codec.unpack(c, &mut w);
                let smallest = smallest_repetition(graph, &w).map_or(u8::MAX, |s| s as u8);
                let parallel = if orientation_is(graph, &w, true) {
                    Some(true)
                } else if orientation_is(graph, &w, false) {
                    Some(false)
                } else {
                    None
                };
                (smallest, parallel)
            })
            .collect();
        Ok(OraclePool { graph, auts: brute_automorphisms(graph), codec, walks, facts })
    }

    pub fn automorphisms(&self) -> &[Permutation] {
        &self.auts
    }

    fn codes(&self, config: EnumerationConfig) -> Vec<u128> {
        self.walks
            .iter()
            .zip(&self.facts)
            .filter(|(_, &(smallest, parallel))| {
                let smallest = (smallest != u8::MAX).then_some(smallest as usize);
                let orientation_ok = match config.orientation {
                    Orientation::Any => true,
                    Orientation::Parallel => parallel == Some(true),
                    Orientation::Antiparallel => parallel == Some(false),
                };
                orientation_ok && kind_allows(config.kind, smallest)
            })
            .map(|(&c, _)| c)
            .collect()
    }

    /// All sequences satisfying `config`, sorted.
    pub fn traces(&self, config: EnumerationConfig) -> Vec<DoubleTrace> {
        self.codes(config).into_iter().map(|c| self.codec.trace(c)).collect()
    }

    /// Orbit report of the sequences satisfying `config`.
    pub fn orbits(&self, config: EnumerationConfig, subgroup: Subgroup) -> Result<OrbitReport> {
        report(self.codec, &self.codes(config), &self.auts, subgroup)
    }

    /// Lexicographically smallest member of every orbit under the full group.
    pub fn representatives(&self, config: EnumerationConfig) -> Result<Vec<DoubleTrace>> {
        let acts = actions(&self.auts, self.codec.len, Subgroup::Gamma);
        let orbits = partition_codes(self.codec, &self.codes(config), &acts)?;
        Ok(orbits.into_iter().map(|(_, rep)| self.codec.trace(rep)).collect())
    }

    pub fn verify(&self, config: EnumerationConfig, options: EnumerationOptions) -> Result<VerifyReport> {
        let expected = self.representatives(config)?;
        let actual = Enumerator::new(self.graph, config)?.options(options).traces()?;
        Ok(compare(config, &expected, &actual))
    }
}

/// True iff every edge of `walk` is traversed twice in the same direction
/// (`want_parallel`) or twice in opposite directions.
fn orientation_is(graph: &Graph, walk: &[Vertex], want_parallel: bool) -> bool {
    let n = graph.n();
    let mut first: Vec<Option<(Vertex, Vertex)>> = vec![None; n * n];
    let len = walk.len();
    for i in 0..len {
        let (u, v) = (walk[i], walk[(i + 1) % len]);
        let k = u.min(v) * n + u.max(v);
        match first[k] {
            None => first[k] = Some((u, v)),
            Some(prev) => {
                if (prev == (u, v)) != want_parallel {
                    return false;
                }
            }
        }
    }
    true
}

fn compare(config: EnumerationConfig, expected: &[DoubleTrace], actual: &[DoubleTrace]) -> VerifyReport {
    let want: BTreeSet<&DoubleTrace> = expected.iter().collect();
    let got: BTreeSet<&DoubleTrace> = actual.iter().collect();
    VerifyReport {
        config,
        expected: expected.len(),
        actual: actual.len(),
        missing: want.difference(&got).map(|t| (*t).clone()).collect(),
        extra: got.difference(&want).map(|t| (*t).clone()).collect(),
    }
}

/// Compares the enumerator's output for `config` with the oracle's orbit
/// representatives.
pub fn verify_against_oracle(graph: &Graph, config: EnumerationConfig) -> Result<VerifyReport> {
    check_guard(graph, Scope::AllStarts)?;
    let auts = brute_automorphisms(graph);
    let traces = brute_enumerate(graph, config, Scope::AllStarts)?;
    let expected = orbit_partition(&traces, &auts, Subgroup::Gamma)?.representatives();
    let actual = Enumerator::new(graph, config)?.traces()?;
    Ok(compare(config, &expected, &actual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, NamedGraph};

    fn k4() -> Graph {
        NamedGraph::Tetrahedron.build().unwrap()
    }

    #[test]
    fn c3_walks_include_both_shapes() {
        let c3 = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        let all = brute_enumerate(&c3, EnumerationConfig::any(), Scope::AllStarts).unwrap();
        for want in [[0, 1, 2, 0, 1, 2], [0, 1, 2, 0, 2, 1]] {
            assert!(all.contains(&DoubleTrace::new(&want)));
        }
    }

    #[test]
    fn simple_only_is_subset() {
        let g = k4();
        let all = brute_enumerate(&g, EnumerationConfig::any(), Scope::AllStarts).unwrap();
        let simple = brute_enumerate(&g, EnumerationConfig::any(), Scope::SimpleOnly).unwrap();
        assert!(!simple.is_empty());
        assert!(simple.iter().all(|t| all.binary_search(t).is_ok()));
        assert!(simple.iter().all(|t| t.at(0) == 0 && t.at(1) == 1));
    }

    #[test]
    fn tetrahedron_has_672_strong_sequences() {
        let strong = brute_enumerate(&k4(), EnumerationConfig::strong(), Scope::AllStarts).unwrap();
        assert_eq!(strong.len(), 672);
    }

    #[test]
    fn tetrahedron_orbit_statistics() {
        let g = k4();
        let strong = brute_enumerate(&g, EnumerationConfig::strong(), Scope::AllStarts).unwrap();
        let auts = brute_automorphisms(&g);
        assert_eq!(auts.len(), 24);
        let gamma = orbit_partition(&strong, &auts, Subgroup::Gamma).unwrap();
        assert_eq!(gamma.sizes(), vec![288, 288, 96]);
        assert_eq!(gamma.group_order, 576);
        assert_eq!(gamma.summary(), "3 orbits: 288 288 96");
        let aut = orbit_partition(&strong, &auts, Subgroup::Aut).unwrap();
        assert_eq!(aut.summary(), "28 orbits of size 24");
        let rev = orbit_partition(&strong, &auts, Subgroup::Reversal).unwrap();
        assert_eq!(rev.summary(), "336 orbits of size 2");
        let shift = orbit_partition(&strong, &auts, Subgroup::Shift).unwrap();
        assert_eq!(shift.summary(), "56 orbits of size 12");
        for report in [&gamma, &aut, &rev, &shift] {
            assert_eq!(report.sizes().iter().sum::<usize>(), 672);
            assert!(report.sizes().iter().all(|s| report.group_order % s == 0));
        }
    }

    #[test]
    fn open_set_is_rejected() {
        let g = k4();
        let strong = brute_enumerate(&g, EnumerationConfig::strong(), Scope::SimpleOnly).unwrap();
        let auts = brute_automorphisms(&g);
        assert_eq!(orbit_partition(&strong, &auts, Subgroup::Shift), Err(Error::NotClosed));
    }

    #[test]
    fn guard_refuses_large_graphs() {
        if guard_lifted() {
            return;
        }
        let dodeca = NamedGraph::Dodecahedron.build().unwrap();
        assert!(matches!(
            brute_enumerate(&dodeca, EnumerationConfig::strong(), Scope::SimpleOnly),
            Err(Error::SizeGuard { .. })
        ));
        let cube = NamedGraph::Cube.build().unwrap();
        assert!(check_guard(&cube, Scope::AllStarts).is_ok());
    }

    #[test]
    fn dot_for_single_trace() {
        let single = DoubleTrace::new(&[0, 1, 0, 1]);
        let dot = emit_orbit_graph(&[single], &[], Subgroup::Reversal).unwrap();
        assert_eq!(dot.matches("--").count(), 0);
        assert_eq!(dot.matches("label=").count(), 1);
    }

    #[test]
    fn verify_small_cases() {
        let g = k4();
        let report = verify_against_oracle(&g, EnumerationConfig::strong()).unwrap();
        assert!(report.is_equal(), "{report}");
        assert_eq!(report.expected, 3);
        let y3 = NamedGraph::Prism(3).build().unwrap();
        let report = verify_against_oracle(&y3, EnumerationConfig::strong()).unwrap();
        assert!(report.is_equal(), "{report}");
        assert_eq!(report.expected, 25);
    }
}
