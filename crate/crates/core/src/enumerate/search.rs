//! Depth-first orderly search, optionally split across a rayon pool.

use log::debug;

use super::state::PartialTrace;
use super::symmetry::{RetainedSymmetries, SymmetryTables};
use super::EnumerationOptions;
use crate::automorphism::AutGroup;
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::trace::{is_canonical, is_double_trace, satisfies, DoubleTrace, EnumerationConfig};

pub(crate) struct Searcher<'a> {
    trace: PartialTrace<'a>,
    symmetries: Option<RetainedSymmetries<'a>>,
    group: &'a AutGroup,
    options: EnumerationOptions,
    scratch: Vec<Vec<Vertex>>,
}

impl<'a> Searcher<'a> {
    /// A searcher positioned at the root prefix `(0, 1)`.
    pub(crate) fn new(
        graph: &'a Graph,
        config: EnumerationConfig,
        group: &'a AutGroup,
        tables: &'a SymmetryTables<'a>,
        options: EnumerationOptions,
    ) -> Result<Option<Self>> {
        let mut trace = PartialTrace::empty(graph, config)?;
        trace.set_lookahead(options.lookahead);
        trace.push_start(0);
        let mut symmetries = options.symmetry.then(|| RetainedSymmetries::full(tables));
        if let Some(sym) = symmetries.as_mut() {
            sym.advance(trace.compact()).expect("w_0 = 0 is minimal");
        }
        let mut searcher = Searcher {
            trace,
            symmetries,
            group,
            options,
            scratch: vec![Vec::new(); 2 * graph.m() + 1],
        };
        if !searcher.step(1) {
            return Ok(None);
        }
        Ok(Some(searcher))
    }

    /// Re-enters the prefix `seq` (which must start with the root).
    pub(crate) fn replay(&mut self, seq: &[u16]) -> bool {
        debug_assert_eq!(&seq[..2], self.trace.compact());
        seq[2..].iter().all(|&v| self.step(v as Vertex))
    }

    fn step(&mut self, v: Vertex) -> bool {
        if !self.trace.push(v) {
            return false;
        }
        if let Some(sym) = self.symmetries.as_mut() {
            if sym.advance(self.trace.compact()).is_err() {
                self.trace.pop();
                return false;
            }
        }
        true
    }

    fn unstep(&mut self) {
        if let Some(sym) = self.symmetries.as_mut() {
            sym.retreat();
        }
        self.trace.pop();
    }

    /// Candidate extensions of the current prefix: feasible neighbors,
    /// reduced to one per orbit of the prefix stabilizer.
    fn candidates(&mut self, out: &mut Vec<Vertex>) {
        out.clear();
        let last = self.trace.last();
        let graph = self.trace.graph();
        for &v in graph.neighbors(last) {
            if self.trace.accepts(v) {
                out.push(v);
            }
        }
        if let Some(sym) = self.symmetries.as_ref() {
            if !sym.is_trivial() {
                out.retain(|&v| sym.orbit_min(v) == v);
            }
        }
    }

    fn accept_complete(&self) -> bool {
        let check_canonical = self.options.verify || self.symmetries.is_none();
        if !check_canonical {
            return true;
        }
        let trace = DoubleTrace::from_compact(self.trace.compact());
        if !is_canonical(&trace, self.group) {
            return false;
        }
        if self.options.verify {
            let graph = self.trace.graph();
            let ok = is_double_trace(graph, &trace.to_vec())
                && satisfies(graph, &trace, &self.trace.config());
            debug_assert!(ok, "search emitted {trace:?} violating its constraints");
            return ok;
        }
        true
    }

    /// Runs the search below the current prefix, calling `sink` for every
    /// accepted complete trace.
    pub(crate) fn run(&mut self, sink: &mut dyn FnMut(&[u16])) {
        if self.trace.is_complete() {
            if self.accept_complete() {
                sink(self.trace.compact());
            }
            return;
        }
        let depth = self.trace.len();
        let mut cands = std::mem::take(&mut self.scratch[depth]);
        self.candidates(&mut cands);
        for &v in &cands {
            if self.step(v) {
                self.run(sink);
                self.unstep();
            }
        }
        self.scratch[depth] = cands;
    }

    /// Collects prefixes of length `depth` below the current node; complete
    /// traces met on the way go to `sink`.
    pub(crate) fn frontier(
        &mut self,
        depth: usize,
        out: &mut Vec<Vec<u16>>,
        sink: &mut dyn FnMut(&[u16]),
    ) {
        if self.trace.is_complete() {
            if self.accept_complete() {
                sink(self.trace.compact());
            }
            return;
        }
        if self.trace.len() >= depth {
            out.push(self.trace.compact().to_vec());
            return;
        }
        let mut cands = Vec::new();
        self.candidates(&mut cands);
        for v in cands {
            if self.step(v) {
                self.frontier(depth, out, sink);
                self.unstep();
            }
        }
    }
}

/// Shared inputs of one enumeration run.
pub(crate) struct Run<'a> {
    pub graph: &'a Graph,
    pub config: EnumerationConfig,
    pub group: &'a AutGroup,
    pub tables: SymmetryTables<'a>,
    pub options: EnumerationOptions,
}

impl<'a> Run<'a> {
    fn root(&self) -> Result<Option<Searcher<'_>>> {
        Searcher::new(self.graph, self.config, self.group, &self.tables, self.options)
    }

    pub(crate) fn collect(&self) -> Result<Vec<DoubleTrace>> {
        let mut out = Vec::new();
        self.drive(
            &mut |seq| out.push(DoubleTrace::from_compact(seq)),
            |searcher| {
                let mut local = Vec::new();
                searcher.run(&mut |seq| local.push(DoubleTrace::from_compact(seq)));
                local
            },
            |acc: &mut Vec<DoubleTrace>, part| acc.extend(part),
        )
        .map(|mut parts| {
            parts.append(&mut out);
            parts.sort_unstable();
            parts
        })
    }

    pub(crate) fn count(&self) -> Result<u64> {
        let mut direct = 0u64;
        self.drive(
            &mut |_| direct += 1,
            |searcher| {
                let mut local = 0u64;
                searcher.run(&mut |_| local += 1);
                local
            },
            |acc: &mut u64, part| *acc += part,
        )
        .map(|total| total + direct)
    }

    /// Runs the whole search. With more than one job the tree is cut at a
    /// fixed depth and the subtrees are searched independently; each task
    /// produces a partial result that is merged with `merge`.
    fn drive<T, F, M>(&self, sink: &mut dyn FnMut(&[u16]), task: F, merge: M) -> Result<T>
    where
        T: Default + Send,
        F: Fn(&mut Searcher<'_>) -> T + Sync,
        M: Fn(&mut T, T) + Sync,
    {
        let Some(mut root) = self.root()? else {
            return Ok(T::default());
        };
        let jobs = self.options.effective_jobs();
        if jobs <= 1 {
            root.run(sink);
            return Ok(T::default());
        }
        let len = 2 * self.graph.m();
        let wanted = 64 * jobs;
        let mut depth = 3;
        let mut prefixes = Vec::new();
        let mut shallow: Vec<Vec<u16>> = Vec::new();
        while depth <= len {
            prefixes.clear();
            shallow.clear();
            root.frontier(depth, &mut prefixes, &mut |seq| shallow.push(seq.to_vec()));
            if prefixes.len() >= wanted || depth == len {
                break;
            }
            depth += 2;
        }
        for seq in &shallow {
            sink(seq);
        }
        debug!("searching {} subtrees cut at depth {depth}", prefixes.len());
        Ok(self.run_prefixes(&prefixes, &task, &merge))
    }

    #[cfg(feature = "parallel")]
    fn run_prefixes<T, F, M>(&self, prefixes: &[Vec<u16>], task: &F, merge: &M) -> T
    where
        T: Default + Send,
        F: Fn(&mut Searcher<'_>) -> T + Sync,
        M: Fn(&mut T, T) + Sync,
    {
        use rayon::prelude::*;
        let work = |prefix: &Vec<u16>| -> T {
            let mut searcher = self
                .root()
                .expect("root built before")
                .expect("root is feasible");
            assert!(searcher.replay(prefix), "frontier prefix must replay");
            task(&mut searcher)
        };
        let run = || {
            prefixes
                .par_iter()
                .map(work)
                .fold(T::default, |mut acc, part| {
                    merge(&mut acc, part);
                    acc
                })
                .reduce(T::default, |mut a, b| {
                    merge(&mut a, b);
                    a
                })
        };
        match self.options.jobs {
            Some(threads) => rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map(|pool| pool.install(run))
                .unwrap_or_else(|_| run()),
            None => run(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn run_prefixes<T, F, M>(&self, prefixes: &[Vec<u16>], task: &F, merge: &M) -> T
    where
        T: Default + Send,
        F: Fn(&mut Searcher<'_>) -> T + Sync,
        M: Fn(&mut T, T) + Sync,
    {
        let mut acc = T::default();
        for prefix in prefixes {
            let mut searcher = self
                .root()
                .expect("root built before")
                .expect("root is feasible");
            assert!(searcher.replay(prefix), "frontier prefix must replay");
            merge(&mut acc, task(&mut searcher));
        }
        acc
    }
}
