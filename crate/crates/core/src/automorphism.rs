//! Automorphism groups and the symmetry group acting on double traces.
//!
//! The trace symmetry group is `Aut(G) x D_{2m}`: a relabeling by an
//! automorphism together with a rotation and an optional reversal of the
//! cyclic vertex sequence. Groups here are small enough to be stored as an
//! explicit list of elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A bijection on `0..n`, stored in one-line image notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<Vertex>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<Vertex>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!(
                    "{image:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation { image })
    }

    #[inline]
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.image[v]
    }

    #[inline]
    pub fn image(&self) -> &[Vertex] {
        &self.image
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn is_automorphism_of(&self, graph: &Graph) -> bool {
        self.len() == graph.n()
            && graph
                .edges()
                .iter()
                .all(|&(u, v)| graph.is_adjacent(self.apply(u), self.apply(v)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.image {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The full automorphism group of a graph as an explicit element list.
/// Element 0 is always the identity.
#[derive(Debug, Clone)]
pub struct AutGroup {
    n: usize,
    elements: Vec<Permutation>,
    // sending[x * n + y]: indices of elements with π(x) = y.
    sending: Vec<Vec<u32>>,
    orbit_min: Vec<Vertex>,
}

impl AutGroup {
    pub fn from_elements(n: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        if let Some(pos) = elements.iter().position(Permutation::is_identity) {
            elements.swap(0, pos);
        }
        let mut sending = vec![Vec::new(); n * n];
        for (idx, p) in elements.iter().enumerate() {
            for x in 0..n {
                sending[x * n + p.apply(x)].push(idx as u32);
            }
        }
        let orbit_min = (0..n)
            .map(|x| elements.iter().map(|p| p.apply(x)).min().unwrap_or(x))
            .collect();
        AutGroup {
            n,
            elements,
            sending,
            orbit_min,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn get(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    /// Indices of the elements mapping `x` to `y`.
    #[inline]
    pub fn sending(&self, x: Vertex, y: Vertex) -> &[u32] {
        &self.sending[x * self.n + y]
    }

    /// Smallest vertex in the orbit of `x`.
    #[inline]
    pub fn orbit_min(&self, x: Vertex) -> Vertex {
        self.orbit_min[x]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.iter().position(|q| q == p)
    }

    /// Size of the trace symmetry group for a graph with `m` edges.
    pub fn trace_group_order(&self, m: usize) -> usize {
        self.order() * 4 * m
    }

    /// Every element of the trace symmetry group for traces of length `len`.
    pub fn trace_symmetries(&self, len: usize) -> impl Iterator<Item = SymmetryElement> + '_ {
        self.elements.iter().flat_map(move |p| {
            [false, true].into_iter().flat_map(move |reversed| {
                (0..len).map(move |shift| SymmetryElement {
                    pi: p.clone(),
                    shift,
                    reversed,
                })
            })
        })
    }

    /// One permutation per line in image notation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.elements {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

/// An element `(π, shift, reversed)` of the trace symmetry group.
///
/// Acting on `w_0 .. w_{L-1}` it first reverses (keeping `w_0` in place) when
/// `reversed` is set, then rotates left by `shift`, then relabels by `π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryElement {
    pub pi: Permutation,
    pub shift: usize,
    pub reversed: bool,
}

impl SymmetryElement {
    pub fn identity(n: usize) -> Self {
        SymmetryElement {
            pi: Permutation::identity(n),
            shift: 0,
            reversed: false,
        }
    }

    /// The element undoing `self` on sequences of length `len`.
    pub fn inverse(&self, len: usize) -> Self {
        SymmetryElement {
            pi: self.pi.inverse(),
            shift: if self.reversed {
                self.shift
            } else {
                (len - self.shift % len) % len
            },
            reversed: self.reversed,
        }
    }

    /// Position of the input that lands at position `j` of the output.
    #[inline]
    pub fn source_index(&self, j: usize, len: usize) -> usize {
        source_index(j, self.shift, self.reversed, len)
    }
}

/// Index map of the dihedral part: output position `j` reads input position
/// `j + shift` (or `-(j + shift)` when reversed), modulo `len`.
#[inline]
pub fn source_index(j: usize, shift: usize, reversed: bool, len: usize) -> usize {
    let t = (j + shift) % len;
    if reversed {
        (len - t) % len
    } else {
        t
    }
}

/// Applies `gamma` to a cyclic vertex sequence.
pub fn apply_symmetry(gamma: &SymmetryElement, seq: &[Vertex], len: usize) -> Result<Vec<Vertex>> {
    if seq.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            actual: seq.len(),
        });
    }
    Ok((0..len)
        .map(|j| gamma.pi.apply(seq[gamma.source_index(j, len)]))
        .collect())
}

/// All automorphisms of `graph`.
///
/// Backtracking over an equitable colour refinement: individualize a vertex
/// of the smallest non-singleton cell, try every image in the matching cell,
/// refine both sides in lockstep, and prune when cell sizes disagree.
pub fn automorphisms(graph: &Graph) -> AutGroup {
    let mut found = Vec::new();
    isomorphism_search(graph, graph, false, &mut found);
    AutGroup::from_elements(graph.n(), found)
}

/// An isomorphism `g -> h`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let mut found = Vec::new();
    isomorphism_search(g, h, true, &mut found);
    found.pop()
}

fn isomorphism_search(g: &Graph, h: &Graph, first_only: bool, out: &mut Vec<Permutation>) {
    let cg = vec![0u32; g.n()];
    let ch = vec![0u32; h.n()];
    search(g, h, cg, ch, first_only, out);
}

fn search(
    g: &Graph,
    h: &Graph,
    mut cg: Vec<u32>,
    mut ch: Vec<u32>,
    first_only: bool,
    out: &mut Vec<Permutation>,
) -> bool {
    let Some(colors) = refine(g, h, &mut cg, &mut ch) else {
        return false;
    };
    let n = g.n();
    if colors == n {
        let mut image = vec![0; n];
        let mut by_color = vec![0; n];
        for (u, &c) in ch.iter().enumerate() {
            by_color[c as usize] = u;
        }
        for (v, &c) in cg.iter().enumerate() {
            image[v] = by_color[c as usize];
        }
        let p = Permutation { image };
        if g.edges().iter().all(|&(u, v)| h.is_adjacent(p.apply(u), p.apply(v))) {
            out.push(p);
            return first_only;
        }
        return false;
    }
    let mut sizes = vec![0usize; colors];
    for &c in &cg {
        sizes[c as usize] += 1;
    }
    let target = (0..colors)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("non-discrete partition has a cell of size > 1") as u32;
    let v = cg.iter().position(|&c| c == target).unwrap();
    let fresh = colors as u32;
    for u in (0..h.n()).filter(|&u| ch[u] == target) {
        let mut ng = cg.clone();
        let mut nh = ch.clone();
        ng[v] = fresh;
        nh[u] = fresh;
        if search(g, h, ng, nh, first_only, out) {
            return true;
        }
    }
    false
}

/// Refines both colourings to the coarsest common equitable partition.
/// Returns the number of colours, or `None` if the two sides diverge.
fn refine(g: &Graph, h: &Graph, cg: &mut [u32], ch: &mut [u32]) -> Option<usize> {
    let count = |c: &[u32]| c.iter().copied().max().map_or(0, |x| x as usize + 1);
    let mut colors = count(cg);
    if colors != count(ch) {
        return None;
    }
    loop {
        let sig = |graph: &Graph, c: &[u32], v: Vertex| {
            let mut s: Vec<u32> = graph.neighbors(v).iter().map(|&u| c[u]).collect();
            s.sort_unstable();
            (c[v], s)
        };
        let sg: Vec<_> = (0..g.n()).map(|v| sig(g, cg, v)).collect();
        let sh: Vec<_> = (0..h.n()).map(|v| sig(h, ch, v)).collect();
        let mut all: Vec<_> = sg.iter().collect();
        all.sort();
        let mut other: Vec<_> = sh.iter().collect();
        other.sort();
        if all != other {
            return None;
        }
        all.dedup();
        let new_colors = all.len();
        for (v, s) in sg.iter().enumerate() {
            cg[v] = all.binary_search(&s).unwrap() as u32;
        }
        for (v, s) in sh.iter().enumerate() {
            ch[v] = all.binary_search(&s).unwrap() as u32;
        }
        if new_colors == colors {
            return Some(colors);
        }
        colors = new_colors;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, NamedGraph};

    fn brute_force_order(g: &Graph) -> usize {
        fn rec(g: &Graph, image: &mut Vec<Vertex>, used: &mut [bool], count: &mut usize) {
            if image.len() == g.n() {
                let p = Permutation::from_image(image.clone()).unwrap();
                if p.is_automorphism_of(g) {
                    *count += 1;
                }
                return;
            }
            for v in 0..g.n() {
                if !used[v] {
                    used[v] = true;
                    image.push(v);
                    rec(g, image, used, count);
                    image.pop();
                    used[v] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.n()], &mut count);
        count
    }

    #[test]
    fn orders_match_brute_force() {
        let graphs = [
            parse_edge_list("0 1\n1 2\n2 0").unwrap(),
            NamedGraph::Tetrahedron.build().unwrap(),
            NamedGraph::Prism(3).build().unwrap(),
            NamedGraph::Pyramid(4).build().unwrap(),
            NamedGraph::Bipyramid(3).build().unwrap(),
            NamedGraph::Octahedron.build().unwrap(),
            parse_edge_list("0 1\n1 2\n2 3\n3 0\n0 4").unwrap(),
        ];
        for g in &graphs {
            let group = automorphisms(g);
            assert_eq!(group.order(), brute_force_order(g), "{g:?}");
        }
        assert_eq!(automorphisms(&graphs[0]).order(), 6);
        assert_eq!(automorphisms(&graphs[1]).order(), 24);
        assert_eq!(automorphisms(&graphs[2]).order(), 12);
    }

    #[test]
    fn larger_polyhedra() {
        let orders = [
            (NamedGraph::Cube, 48),
            (NamedGraph::Dodecahedron, 120),
            (NamedGraph::Icosahedron, 120),
            (NamedGraph::Prism(7), 28),
        ];
        for (name, order) in orders {
            let g = name.build().unwrap();
            let group = automorphisms(&g);
            assert_eq!(group.order(), order, "{name}");
            assert!(group.elements().iter().all(|p| p.is_automorphism_of(&g)));
            // Orbit-stabilizer on the vertex action.
            let orbit: std::collections::BTreeSet<_> =
                group.elements().iter().map(|p| p.apply(0)).collect();
            assert_eq!(orbit.len() * group.sending(0, 0).len(), order);
        }
    }

    #[test]
    fn group_is_closed() {
        let g = NamedGraph::Prism(4).build().unwrap();
        let group = automorphisms(&g);
        assert!(group.get(0).is_identity());
        for a in group.elements() {
            assert!(group.index_of(&a.inverse()).is_some());
            for b in group.elements() {
                assert!(group.index_of(&a.compose(b)).is_some());
            }
        }
    }

    #[test]
    fn prism4_is_a_cube() {
        let prism = NamedGraph::Prism(4).build().unwrap();
        let cube = NamedGraph::Cube.build().unwrap();
        let iso = find_isomorphism(&prism, &cube).expect("isomorphic");
        for &(u, v) in prism.edges() {
            assert!(cube.is_adjacent(iso.apply(u), iso.apply(v)));
        }
        let octa = NamedGraph::Octahedron.build().unwrap();
        assert!(find_isomorphism(&cube, &octa).is_none());
        let y5 = NamedGraph::Prism(5).build().unwrap();
        let p5 = NamedGraph::Pyramid(5).build().unwrap();
        assert!(find_isomorphism(&y5, &p5).is_none());
    }

    #[test]
    fn apply_symmetry_conventions() {
        let w = [0, 1, 2, 0, 1, 2];
        let id = SymmetryElement::identity(3);
        assert_eq!(apply_symmetry(&id, &w, 6).unwrap(), w);
        let rev = SymmetryElement { reversed: true, ..id.clone() };
        assert_eq!(apply_symmetry(&rev, &w, 6).unwrap(), [0, 2, 1, 0, 2, 1]);
        let shift = SymmetryElement { shift: 2, ..id.clone() };
        assert_eq!(apply_symmetry(&shift, &w, 6).unwrap(), [2, 0, 1, 2, 0, 1]);
        assert!(matches!(
            apply_symmetry(&id, &w[..5], 6),
            Err(Error::LengthMismatch { expected: 6, actual: 5 })
        ));
    }

    #[test]
    fn inverse_elements_undo() {
        let g = NamedGraph::Tetrahedron.build().unwrap();
        let group = automorphisms(&g);
        let w: Vec<Vertex> = vec![0, 1, 2, 3, 0, 2, 1, 3, 2, 0, 3, 1];
        for gamma in group.trace_symmetries(12) {
            let there = apply_symmetry(&gamma, &w, 12).unwrap();
            let back = apply_symmetry(&gamma.inverse(12), &there, 12).unwrap();
            assert_eq!(back, w, "{gamma:?}");
        }
        assert_eq!(group.trace_symmetries(12).count(), 24 * 24);
    }

    #[test]
    fn group_text_output() {
        let g = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        let text = automorphisms(&g).to_text();
        assert_eq!(text.lines().count(), 6);
        assert_eq!(text.lines().next(), Some("0 1 2"));
    }
}
