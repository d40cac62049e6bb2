//! Symmetry elements still able to witness non-canonicity of a prefix.
//!
//! Elements are grouped by their dihedral part `(shift, reversed)`. For a
//! fixed dihedral part, output position `j` of the image reads input
//! position `r(j)`, so the image prefix is known exactly as far as both `j`
//! and `r(j)` are inside the prefix. All relabelings sharing a dihedral part
//! therefore advance in lockstep; they are kept as a bitset, and a dihedral
//! part is revisited only when the position it waits for is appended.

use crate::automorphism::{source_index, AutGroup, SymmetryElement};
use crate::graph::Vertex;

const DEAD: u32 = u32::MAX;

/// Per-group lookup tables, shared by every search node.
#[derive(Debug)]
pub struct SymmetryTables<'g> {
    group: &'g AutGroup,
    len: usize,
    words: usize,
    // send[(x * n + y) * words..]: relabelings with π(x) = y.
    send: Vec<u64>,
    // below[(x * n + y) * words..]: relabelings with π(x) < y.
    below: Vec<u64>,
}

impl<'g> SymmetryTables<'g> {
    /// Tables for traces of length `len` under `group`.
    pub fn new(group: &'g AutGroup, len: usize) -> Self {
        let n = group.n();
        let words = group.order().div_ceil(64);
        let mut send = vec![0u64; n * n * words];
        let mut below = vec![0u64; n * n * words];
        for (idx, p) in group.elements().iter().enumerate() {
            let (w, bit) = (idx / 64, 1u64 << (idx % 64));
            for x in 0..n {
                let px = p.apply(x);
                send[(x * n + px) * words + w] |= bit;
                for y in px + 1..n {
                    below[(x * n + y) * words + w] |= bit;
                }
            }
        }
        SymmetryTables {
            group,
            len,
            words,
            send,
            below,
        }
    }

    #[inline]
    pub fn group(&self) -> &'g AutGroup {
        self.group
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn dihedral(&self, delta: usize) -> (usize, bool) {
        (delta % self.len, delta >= self.len)
    }

    #[inline]
    fn source(&self, delta: usize, j: usize) -> usize {
        let (shift, reversed) = self.dihedral(delta);
        source_index(j, shift, reversed, self.len)
    }

    fn element(&self, delta: usize, pi: usize) -> SymmetryElement {
        let (shift, reversed) = self.dihedral(delta);
        SymmetryElement {
            pi: self.group.get(pi).clone(),
            shift,
            reversed,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Change {
    State { delta: u32, progress: u32, saved: u32 },
    Wait { pos: u32 },
}

/// Whether a retained element's image of the prefix is already fully known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determinacy {
    /// The image of the whole prefix is known and equals the prefix.
    Stabilizing,
    /// The image agrees with the prefix as far as it is known.
    Undetermined,
}

/// The subset of the trace symmetry group not yet excluded for the current
/// prefix. Starts as the whole group and only shrinks as the prefix grows.
#[derive(Debug, Clone)]
pub struct RetainedSymmetries<'t> {
    tables: &'t SymmetryTables<'t>,
    processed: usize,
    // Per dihedral part: length of the image prefix known to equal the
    // trace prefix (or DEAD), and the surviving relabelings.
    progress: Vec<u32>,
    bits: Vec<u64>,
    // waiting[q]: dihedral parts to revisit once position q is known.
    waiting: Vec<Vec<u32>>,
    trail: Vec<Change>,
    saved: Vec<u64>,
    marks: Vec<(usize, usize)>,
}

impl<'t> RetainedSymmetries<'t> {
    /// The whole group, before any position is known.
    pub fn full(tables: &'t SymmetryTables<'t>) -> Self {
        let len = tables.len;
        let words = tables.words;
        let order = tables.group.order();
        let mut full = vec![u64::MAX; words];
        if !order.is_multiple_of(64) {
            full[words - 1] = (1u64 << (order % 64)) - 1;
        }
        let mut waiting = vec![Vec::new(); len];
        for delta in 0..2 * len {
            waiting[tables.source(delta, 0)].push(delta as u32);
        }
        RetainedSymmetries {
            tables,
            processed: 0,
            progress: vec![0; 2 * len],
            bits: full.repeat(2 * len),
            waiting,
            trail: Vec::new(),
            saved: Vec::new(),
            marks: Vec::new(),
        }
    }

    #[inline]
    pub fn group(&self) -> &'t AutGroup {
        self.tables.group
    }

    /// Number of prefix positions already taken into account.
    #[inline]
    pub fn processed(&self) -> usize {
        self.processed
    }

    /// Takes position `prefix.len() - 1` into account. Returns a witness if
    /// some element maps the prefix to a strictly smaller sequence, in which
    /// case the state is left unchanged.
    pub fn advance(&mut self, prefix: &[u16]) -> Result<(), SymmetryElement> {
        let p = prefix.len();
        assert_eq!(p, self.processed + 1, "positions must be added in order");
        let q = p - 1;
        let words = self.tables.words;
        let mark = (self.trail.len(), self.saved.len());
        for i in 0..self.waiting[q].len() {
            let delta = self.waiting[q][i] as usize;
            let mut j = self.progress[delta] as usize;
            self.trail.push(Change::State {
                delta: delta as u32,
                progress: j as u32,
                saved: self.saved.len() as u32,
            });
            let bits = &mut self.bits[delta * words..(delta + 1) * words];
            self.saved.extend_from_slice(bits);
            let mut dead = false;
            while j < p {
                let r = self.tables.source(delta, j);
                if r >= p {
                    break;
                }
                let (x, y) = (prefix[r] as usize, prefix[j] as usize);
                let n = self.tables.group.n();
                let cell = (x * n + y) * words;
                let below = &self.tables.below[cell..cell + words];
                if let Some(pi) = first_common(bits, below) {
                    let witness = self.tables.element(delta, pi);
                    self.rollback(mark);
                    return Err(witness);
                }
                let send = &self.tables.send[cell..cell + words];
                let mut any = 0;
                for (b, s) in bits.iter_mut().zip(send) {
                    *b &= s;
                    any |= *b;
                }
                if any == 0 {
                    dead = true;
                    break;
                }
                j += 1;
            }
            if dead {
                self.progress[delta] = DEAD;
            } else {
                self.progress[delta] = j as u32;
                if j < self.tables.len {
                    let pos = self.tables.source(delta, j).max(j);
                    self.waiting[pos].push(delta as u32);
                    self.trail.push(Change::Wait { pos: pos as u32 });
                }
            }
        }
        self.marks.push(mark);
        self.processed = p;
        Ok(())
    }

    /// Undoes the most recent [`advance`](Self::advance).
    pub fn retreat(&mut self) {
        let mark = self.marks.pop().expect("retreat without advance");
        self.rollback(mark);
        self.processed -= 1;
    }

    fn rollback(&mut self, (trail_len, saved_len): (usize, usize)) {
        let words = self.tables.words;
        while self.trail.len() > trail_len {
            match self.trail.pop().unwrap() {
                Change::State {
                    delta,
                    progress,
                    saved,
                } => {
                    let d = delta as usize;
                    self.progress[d] = progress;
                    let s = saved as usize;
                    self.bits[d * words..(d + 1) * words]
                        .copy_from_slice(&self.saved[s..s + words]);
                }
                Change::Wait { pos } => {
                    self.waiting[pos as usize].pop();
                }
            }
        }
        self.saved.truncate(saved_len);
    }

    /// Indices of the pure relabelings fixing every known position: the
    /// pointwise stabilizer of the prefix in `Aut(G)`.
    pub fn relabel_stabilizer(&self) -> impl Iterator<Item = usize> + '_ {
        let words = self.tables.words;
        let fixed = self.progress[0] as usize == self.processed;
        let bits = if fixed { &self.bits[..words] } else { &[][..] };
        iter_bits(bits)
    }

    /// Maps `v` to the smallest vertex of its orbit under
    /// [`relabel_stabilizer`](Self::relabel_stabilizer).
    pub fn orbit_min(&self, v: Vertex) -> Vertex {
        self.relabel_stabilizer()
            .map(|pi| self.tables.group.get(pi).apply(v))
            .min()
            .unwrap_or(v)
    }

    /// Whether only the identity survives among pure relabelings.
    pub fn is_trivial(&self) -> bool {
        self.relabel_stabilizer().nth(1).is_none()
    }

    /// Every retained element, with whether its action on the prefix is
    /// already fully determined.
    pub fn elements(&self) -> Vec<(SymmetryElement, Determinacy)> {
        let words = self.tables.words;
        let mut out = Vec::new();
        for (delta, &progress) in self.progress.iter().enumerate() {
            if progress == DEAD {
                continue;
            }
            let status = if progress as usize >= self.processed {
                Determinacy::Stabilizing
            } else {
                Determinacy::Undetermined
            };
            for pi in iter_bits(&self.bits[delta * words..(delta + 1) * words]) {
                out.push((self.tables.element(delta, pi), status));
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        let words = self.tables.words;
        self.progress
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p != DEAD)
            .map(|(d, _)| {
                self.bits[d * words..(d + 1) * words]
                    .iter()
                    .map(|b| b.count_ones() as usize)
                    .sum::<usize>()
            })
            .sum()
    }
}

#[inline]
fn first_common(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(w, (x, y))| {
            let both = x & y;
            (both != 0).then(|| w * 64 + both.trailing_zeros() as usize)
        })
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + bit)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{apply_symmetry, automorphisms};
    use crate::graph::NamedGraph;

    #[test]
    fn full_group_then_identity_survives() {
        let g = NamedGraph::Tetrahedron.build().unwrap();
        let group = automorphisms(&g);
        let tables = SymmetryTables::new(&group, 12);
        let mut sym = RetainedSymmetries::full(&tables);
        assert_eq!(sym.count(), 24 * 24);
        let w: Vec<u16> = vec![0, 1, 2, 3, 0, 2, 1, 3, 2, 0, 3, 1];
        let mut last = sym.count();
        for p in 1..=w.len() {
            if sym.advance(&w[..p]).is_err() {
                break;
            }
            let now = sym.count();
            assert!(now <= last);
            last = now;
            assert!(sym
                .elements()
                .iter()
                .any(|(e, d)| e.pi.is_identity() && e.shift == 0 && !e.reversed
                    && *d == Determinacy::Stabilizing));
        }
    }

    #[test]
    fn witness_really_is_smaller() {
        let g = NamedGraph::Tetrahedron.build().unwrap();
        let group = automorphisms(&g);
        let tables = SymmetryTables::new(&group, 12);
        let mut sym = RetainedSymmetries::full(&tables);
        // 0 1 2 0 ... : the swap 2<->3 does not help, but (0 1 2 0 3 ...) vs
        // relabelings fixing 0,1 map 3 to 2 at position 4 if 2 is still free.
        let w: Vec<u16> = vec![0, 1, 3];
        sym.advance(&w[..1]).unwrap();
        sym.advance(&w[..2]).unwrap();
        let witness = sym.advance(&w).unwrap_err();
        let image: Vec<Vertex> = (0..3).map(|j| witness.pi.apply(w[witness.source_index(j, 12)] as usize)).collect();
        assert!(image < vec![0, 1, 3]);
        assert_eq!(sym.processed(), 2);
        let full: Vec<Vertex> = vec![0, 1, 3, 2, 0, 3, 1, 2, 3, 0, 2, 1];
        let img = apply_symmetry(&witness, &full, 12).unwrap();
        assert!(img < full);
    }

    #[test]
    fn retreat_restores_state() {
        let g = NamedGraph::Prism(3).build().unwrap();
        let group = automorphisms(&g);
        let tables = SymmetryTables::new(&group, 18);
        let mut sym = RetainedSymmetries::full(&tables);
        let w: Vec<u16> = vec![0, 1, 2, 0, 3];
        sym.advance(&w[..1]).unwrap();
        sym.advance(&w[..2]).unwrap();
        let before = sym.elements();
        sym.advance(&w[..3]).unwrap();
        sym.retreat();
        assert_eq!(sym.elements(), before);
    }
}
