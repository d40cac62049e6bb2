//! Incremental state of a partial double trace.
//!
//! Every `push` validates the new step against edge multiplicity, the
//! orientation constraint and the transition structure at the vertex just
//! left, and records its effects on an undo trail so `pop` is exact.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::trace::{EnumerationConfig, Orientation, TraceKind};

#[derive(Debug, Clone, Copy)]
enum Undo {
    Traverse { edge: u32 },
    Transition { at: u16 },
}

/// A prefix `w_0 .. w_{p-1}` of a candidate trace together with the edge
/// use counts, first traversal directions and the transition pairs recorded
/// at every vertex so far.
#[derive(Debug, Clone)]
pub struct PartialTrace<'g> {
    graph: &'g Graph,
    config: EnumerationConfig,
    target_len: usize,
    seq: Vec<u16>,
    uses: Vec<u8>,
    first_tail: Vec<u16>,
    visits: Vec<u8>,
    // Per vertex: transition pairs as local neighbor indices, and how often
    // each neighbor occurs in them.
    pairs: Vec<Vec<(u8, u8)>>,
    pair_degree: Vec<u8>,
    max_degree: usize,
    // local[v * n + u]: index of u in N(v).
    local: Vec<u8>,
    trail: Vec<Undo>,
    marks: Vec<usize>,
    lookahead: bool,
}

impl<'g> PartialTrace<'g> {
    /// The root prefix `(0, 1)`.
    pub fn new(graph: &'g Graph, config: EnumerationConfig) -> Result<Self> {
        let mut trace = Self::empty(graph, config)?;
        trace.push_start(0);
        if !trace.push(1) {
            return Err(Error::NotNormalized);
        }
        Ok(trace)
    }

    /// A prefix holding only `w_0 = start`.
    pub(crate) fn empty(graph: &'g Graph, config: EnumerationConfig) -> Result<Self> {
        if !graph.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if graph.n() > u16::MAX as usize {
            return Err(Error::SizeGuard {
                what: "vertex count",
                limit: u16::MAX as usize,
                actual: graph.n(),
            });
        }
        let max_degree = graph.max_degree();
        if max_degree > 64 {
            return Err(Error::SizeGuard {
                what: "maximum degree",
                limit: 64,
                actual: max_degree,
            });
        }
        if let TraceKind::Stable(0) = config.kind {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        let n = graph.n();
        let mut local = vec![u8::MAX; n * n];
        for v in 0..n {
            for (i, &u) in graph.neighbors(v).iter().enumerate() {
                local[v * n + u] = i as u8;
            }
        }
        let target_len = 2 * graph.m();
        Ok(PartialTrace {
            graph,
            config,
            target_len,
            seq: Vec::with_capacity(target_len),
            uses: vec![0; graph.m()],
            first_tail: vec![0; graph.m()],
            visits: vec![0; n],
            pairs: (0..n).map(|v| Vec::with_capacity(graph.degree(v))).collect(),
            pair_degree: vec![0; n * max_degree],
            max_degree,
            local,
            trail: Vec::with_capacity(4 * target_len),
            marks: Vec::with_capacity(target_len),
            lookahead: false,
        })
    }

    pub(crate) fn push_start(&mut self, v: Vertex) {
        debug_assert!(self.seq.is_empty());
        self.marks.push(self.trail.len());
        self.seq.push(v as u16);
        self.visits[v] += 1;
    }

    pub(crate) fn set_lookahead(&mut self, on: bool) {
        self.lookahead = on;
    }

    #[inline]
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    #[inline]
    pub fn config(&self) -> EnumerationConfig {
        self.config
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Length of a complete trace, `2m`.
    #[inline]
    pub fn target_len(&self) -> usize {
        self.target_len
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.seq.len() == self.target_len
    }

    #[inline]
    pub fn compact(&self) -> &[u16] {
        &self.seq
    }

    pub fn seq(&self) -> Vec<Vertex> {
        self.seq.iter().map(|&v| v as Vertex).collect()
    }

    #[inline]
    pub fn last(&self) -> Vertex {
        *self.seq.last().expect("prefix is never empty") as Vertex
    }

    /// Times edge `{u, v}` has been traversed, counting the closing step of
    /// a complete trace.
    pub fn edge_uses(&self, u: Vertex, v: Vertex) -> Option<u8> {
        self.graph.edge_id(u, v).map(|e| self.uses[e.index()])
    }

    /// Direction `(tail, head)` of the first traversal of `{u, v}`.
    pub fn first_direction(&self, u: Vertex, v: Vertex) -> Option<(Vertex, Vertex)> {
        let e = self.graph.edge_id(u, v)?.index();
        if self.uses[e] == 0 {
            return None;
        }
        let tail = self.first_tail[e] as Vertex;
        Some((tail, if tail == u { v } else { u }))
    }

    pub fn visits(&self, v: Vertex) -> usize {
        self.visits[v] as usize
    }

    /// Transition pairs `{predecessor, successor}` recorded at `v`.
    pub fn transitions(&self, v: Vertex) -> Vec<(Vertex, Vertex)> {
        let nbrs = self.graph.neighbors(v);
        self.pairs[v]
            .iter()
            .map(|&(a, b)| (nbrs[a as usize], nbrs[b as usize]))
            .collect()
    }

    /// Whether `v` would be accepted by [`push`](Self::push).
    pub fn accepts(&mut self, v: Vertex) -> bool {
        if self.push(v) {
            self.pop();
            true
        } else {
            false
        }
    }

    /// Appends `v` if the extended prefix satisfies every local constraint.
    /// On success the state includes all consequences of the step, and of
    /// the closing step when the trace becomes complete. On failure the
    /// state is unchanged.
    pub fn push(&mut self, v: Vertex) -> bool {
        let p = self.seq.len();
        if p == 0 || p >= self.target_len || !self.graph.is_adjacent(self.last(), v) {
            return false;
        }
        let mark = self.trail.len();
        if self.extend(v) {
            self.marks.push(mark);
            self.seq.push(v as u16);
            self.visits[v] += 1;
            if self.lookahead && !self.is_complete() && !self.remaining_connected() {
                self.pop();
                return false;
            }
            true
        } else {
            self.rollback(mark);
            false
        }
    }

    pub fn pop(&mut self) {
        let v = self.seq.pop().expect("pop on empty prefix") as usize;
        self.visits[v] -= 1;
        let mark = self.marks.pop().expect("mark per position");
        self.rollback(mark);
    }

    fn extend(&mut self, v: Vertex) -> bool {
        let p = self.seq.len();
        let prev = self.last();
        if !self.traverse(prev, v) {
            return false;
        }
        if p >= 2 {
            let before = self.seq[p - 2] as Vertex;
            if !self.add_transition(prev, before, v) {
                return false;
            }
        }
        if p + 1 == self.target_len {
            let start = self.seq[0] as Vertex;
            let second = if p >= 2 { self.seq[1] as Vertex } else { v };
            if !self.traverse(v, start)
                || !self.add_transition(v, prev, start)
                || !self.add_transition(start, v, second)
            {
                return false;
            }
        }
        true
    }

    fn traverse(&mut self, from: Vertex, to: Vertex) -> bool {
        let Some(e) = self.graph.edge_id(from, to) else {
            return false;
        };
        let e = e.index();
        match self.uses[e] {
            0 => self.first_tail[e] = from as u16,
            1 => {
                let same = self.first_tail[e] as Vertex == from;
                let ok = match self.config.orientation {
                    Orientation::Any => true,
                    Orientation::Parallel => same,
                    Orientation::Antiparallel => !same,
                };
                if !ok {
                    return false;
                }
            }
            _ => return false,
        }
        self.uses[e] += 1;
        self.trail.push(Undo::Traverse { edge: e as u32 });
        true
    }

    /// Records the transition `{a, b}` at `v` and rejects it if it closes a
    /// component of the transition structure that the configured kind
    /// forbids. Each neighbor occurs in exactly two transitions of a complete
    /// trace, so a component whose members all occur twice is final.
    fn add_transition(&mut self, v: Vertex, a: Vertex, b: Vertex) -> bool {
        let n = self.graph.n();
        let la = self.local[v * n + a];
        let lb = self.local[v * n + b];
        let base = v * self.max_degree;
        self.pairs[v].push((la, lb));
        self.pair_degree[base + la as usize] += 1;
        self.pair_degree[base + lb as usize] += 1;
        self.trail.push(Undo::Transition { at: v as u16 });
        if matches!(self.config.kind, TraceKind::Any) {
            return true;
        }
        let degree = self.graph.degree(v);
        let mut component = 1u64 << la;
        loop {
            let mut grown = component;
            for &(x, y) in &self.pairs[v] {
                if grown >> x & 1 == 1 || grown >> y & 1 == 1 {
                    grown |= 1 << x | 1 << y;
                }
            }
            if grown == component {
                break;
            }
            component = grown;
        }
        let size = component.count_ones() as usize;
        if size == degree {
            return true;
        }
        let closed = (0..degree)
            .filter(|&i| component >> i & 1 == 1)
            .all(|i| self.pair_degree[base + i] == 2);
        if !closed {
            return true;
        }
        // The remaining neighbors split into components of at most
        // `degree - size` elements.
        match self.config.kind {
            TraceKind::Any => true,
            TraceKind::Strong => false,
            TraceKind::Stable(d) => size > d && degree - size > d,
        }
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Traverse { edge } => self.uses[edge as usize] -= 1,
                Undo::Transition { at } => {
                    let v = at as usize;
                    let (a, b) = self.pairs[v].pop().unwrap();
                    let base = v * self.max_degree;
                    self.pair_degree[base + a as usize] -= 1;
                    self.pair_degree[base + b as usize] -= 1;
                }
            }
        }
    }

    /// Every edge with remaining uses is reachable from the current vertex
    /// through such edges (and the start vertex still has one, for closing).
    fn remaining_connected(&self) -> bool {
        let n = self.graph.n();
        let start = self.last();
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in self.graph.neighbors(x) {
                let e = self.graph.edge_id(x, y).unwrap().index();
                if self.uses[e] < 2 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let first = self.seq[0] as usize;
        seen[first]
            && self
                .graph
                .edges()
                .iter()
                .enumerate()
                .all(|(e, &(u, _))| self.uses[e] == 2 || seen[u])
    }
}
