//! Simple connected graphs, input formats and the named polyhedral families.
//!
//! Vertices are `0..n` and carry the order `0 < 1 < ... < n-1`. Every edge has
//! a dense index in `0..m`, assigned in input (or generator) order.

use std::fmt;
use std::str::FromStr;

use log::warn;

use crate::automorphism::Permutation;
use crate::error::{Error, Result};

pub type Vertex = usize;

/// Dense index of an undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NO_EDGE: u32 = u32::MAX;

/// An immutable simple, undirected, connected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    edge_matrix: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `0..n` from an edge list.
    ///
    /// Duplicate edges are collapsed (with a warning); loops and disconnected
    /// inputs are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut kept = Vec::with_capacity(edges.len());
        let mut edge_matrix = vec![NO_EDGE; n * n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if edge_matrix[u * n + v] != NO_EDGE {
                warn!("duplicate edge {u}-{v} collapsed");
                continue;
            }
            let id = kept.len() as u32;
            edge_matrix[u * n + v] = id;
            edge_matrix[v * n + u] = id;
            adj[u].push(v);
            adj[v].push(u);
            kept.push((u.min(v), u.max(v)));
        }
        if kept.is_empty() {
            return Err(Error::NoEdges);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let graph = Graph {
            n,
            adj,
            edges: kept,
            edge_matrix,
        };
        let components = graph.components();
        if components.len() > 1 {
            return Err(Error::Disconnected(components));
        }
        Ok(graph)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v` in increasing order.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_matrix[u * self.n + v] != NO_EDGE
    }

    #[inline]
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        match self.edge_matrix[u * self.n + v] {
            NO_EDGE => None,
            id => Some(EdgeId(id)),
        }
    }

    /// Edges as `(min, max)` pairs, indexed by [`EdgeId`].
    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Every vertex has even degree (the graph is connected by construction).
    pub fn is_eulerian(&self) -> bool {
        self.adj.iter().all(|a| a.len() % 2 == 0)
    }

    /// The distinguished adjacent pair required at the start of every
    /// canonical trace.
    pub fn is_normalized(&self) -> bool {
        self.n >= 2 && self.is_adjacent(0, 1)
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`. Edge indices
    /// are preserved.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation size must match graph");
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm.apply(u), perm.apply(v)))
            .collect();
        Graph::from_edges(self.n, &edges).expect("relabeling preserves validity")
    }

    fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Parses whitespace-separated vertex pairs, one edge per line. Text after
/// `#` is ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_label = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected two vertex labels, found {}", tokens.len()),
            });
        }
        let mut pair = [0usize; 2];
        for (slot, tok) in pair.iter_mut().zip(&tokens) {
            *slot = tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("`{tok}` is not a nonnegative integer"),
            })?;
        }
        max_label = max_label.max(pair[0]).max(pair[1]);
        edges.push((pair[0], pair[1]));
    }
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Graph::from_edges(max_label + 1, &edges)
}

/// Decodes one graph6 line (the optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("invalid character {:?}", b as char)));
    }
    let sextet = |i: usize| -> Result<usize> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| Error::Graph6("truncated vertex count".into()))
    };
    let (n, mut pos) = if bytes[0] != 126 {
        (sextet(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        ((1..4).try_fold(0, |acc, i| Ok::<_, Error>((acc << 6) | sextet(i)?))?, 4)
    } else {
        ((2..8).try_fold(0, |acc, i| Ok::<_, Error>((acc << 6) | sextet(i)?))?, 8)
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let chars_needed = bits_needed.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != chars_needed {
        return Err(Error::Graph6(format!(
            "expected {chars_needed} data characters for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let word = (body[bit / 6] - 63) as usize;
            if word >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    pos += chars_needed;
    debug_assert_eq!(pos, bytes.len());
    Graph::from_edges(n, &edges)
}

/// Encodes a graph in graph6 format (no header).
pub fn to_graph6(graph: &Graph) -> String {
    let n = graph.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | graph.is_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// The graph families used in the published tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
    /// `C_k x K_2`.
    Prism(usize),
    /// `C_k` plus an apex joined to every cycle vertex.
    Pyramid(usize),
    /// `C_k` plus two apexes joined to every cycle vertex.
    Bipyramid(usize),
}

impl NamedGraph {
    pub fn build(self) -> Result<Graph> {
        let edges = match self {
            NamedGraph::Tetrahedron => complete(4),
            NamedGraph::Cube => (0..8usize)
                .flat_map(|u| {
                    [1usize, 2, 4]
                        .into_iter()
                        .map(move |bit| (u, u ^ bit))
                        .filter(|&(u, v)| u < v)
                })
                .collect(),
            NamedGraph::Octahedron => {
                // Top 0, square 1..=4, bottom 5.
                let mut e = Vec::new();
                for i in 1..=4 {
                    e.push((0, i));
                }
                e.extend(cycle(&[1, 2, 3, 4]));
                for i in 1..=4 {
                    e.push((i, 5));
                }
                e
            }
            NamedGraph::Dodecahedron => {
                // Generalized Petersen graph GP(10, 2).
                let mut e: Vec<_> = cycle(&(0..10).collect::<Vec<_>>());
                for i in 0..10 {
                    e.push((i, 10 + i));
                }
                for i in 0..10 {
                    e.push((10 + i, 10 + (i + 2) % 10));
                }
                e
            }
            NamedGraph::Icosahedron => {
                // Top 0, upper ring 1..=5, lower ring 6..=10, bottom 11.
                let mut e = Vec::new();
                for i in 1..=5 {
                    e.push((0, i));
                }
                e.extend(cycle(&[1, 2, 3, 4, 5]));
                for j in 0..5 {
                    e.push((1 + j, 6 + j));
                    e.push((1 + j, 6 + (j + 1) % 5));
                }
                e.extend(cycle(&[6, 7, 8, 9, 10]));
                for i in 6..=10 {
                    e.push((i, 11));
                }
                e
            }
            NamedGraph::Prism(k) => {
                check_k(k)?;
                let mut e = cycle(&(0..k).collect::<Vec<_>>());
                e.extend(cycle(&(k..2 * k).collect::<Vec<_>>()));
                e.extend((0..k).map(|i| (i, k + i)));
                e
            }
            NamedGraph::Pyramid(k) => {
                check_k(k)?;
                let mut e = cycle(&(0..k).collect::<Vec<_>>());
                e.extend((0..k).map(|i| (i, k)));
                e
            }
            NamedGraph::Bipyramid(k) => {
                check_k(k)?;
                let mut e = cycle(&(0..k).collect::<Vec<_>>());
                e.extend((0..k).map(|i| (i, k)));
                e.extend((0..k).map(|i| (i, k + 1)));
                e
            }
        };
        let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
        Graph::from_edges(n, &edges)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

fn complete(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn cycle(vertices: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    (0..vertices.len())
        .map(|i| (vertices[i], vertices[(i + 1) % vertices.len()]))
        .collect()
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `tetrahedron`, `cube`, ..., and `prism:k`, `pyramid:k`,
    /// `bipyramid:k` (also `prism(k)`), case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, param) = match lower.find([':', '(']) {
            Some(i) => {
                let p = lower[i + 1..].trim_end_matches(')');
                let k: usize = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad parameter `{p}`")))?;
                (&lower[..i], Some(k))
            }
            None => (lower.as_str(), None),
        };
        let named = match (name, param) {
            ("tetrahedron", None) => NamedGraph::Tetrahedron,
            ("cube", None) => NamedGraph::Cube,
            ("octahedron", None) => NamedGraph::Octahedron,
            ("dodecahedron", None) => NamedGraph::Dodecahedron,
            ("icosahedron", None) => NamedGraph::Icosahedron,
            ("prism", Some(k)) => NamedGraph::Prism(k),
            ("pyramid", Some(k)) => NamedGraph::Pyramid(k),
            ("bipyramid", Some(k)) => NamedGraph::Bipyramid(k),
            _ => return Err(Error::UnknownGraph(s.to_string())),
        };
        if let Some(k) = param {
            check_k(k)?;
        }
        Ok(named)
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Tetrahedron => write!(f, "tetrahedron"),
            NamedGraph::Cube => write!(f, "cube"),
            NamedGraph::Octahedron => write!(f, "octahedron"),
            NamedGraph::Dodecahedron => write!(f, "dodecahedron"),
            NamedGraph::Icosahedron => write!(f, "icosahedron"),
            NamedGraph::Prism(k) => write!(f, "prism:{k}"),
            NamedGraph::Pyramid(k) => write!(f, "pyramid:{k}"),
            NamedGraph::Bipyramid(k) => write!(f, "bipyramid:{k}"),
        }
    }
}

/// Builds a named graph from `name` and an optional size parameter.
pub fn named_graph(name: &str, k: Option<usize>) -> Result<Graph> {
    let spec = match k {
        Some(k) => format!("{name}:{k}"),
        None => name.to_string(),
    };
    spec.parse::<NamedGraph>()?.build()
}

/// Makes vertices 0 and 1 adjacent by swapping label 1 with the smallest
/// neighbor of 0. Returns the relabeled graph and the applied permutation
/// (old label -> new label).
pub fn normalize_base_edge(graph: &Graph) -> (Graph, Permutation) {
    if graph.is_normalized() {
        return (graph.clone(), Permutation::identity(graph.n()));
    }
    let target = graph.neighbors(0)[0];
    let mut image: Vec<Vertex> = (0..graph.n()).collect();
    image.swap(1, target);
    let perm = Permutation::from_image(image).expect("a transposition is a bijection");
    (graph.relabel(&perm), perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
    }

    #[test]
    fn parses_k4_with_comments_and_duplicates() {
        let text = "# K4\n0 1\n0 2\n0 3\n1 2\n1 3 # trailing\n2 3\n3 2\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
    }

    #[test]
    fn rejects_disconnected_and_loops() {
        match parse_edge_list("0 1\n2 3") {
            Err(Error::Disconnected(c)) => assert_eq!(c, vec![vec![0, 1], vec![2, 3]]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_edge_list("0 1\n1 1"), Err(Error::LoopEdge(1)));
        assert!(matches!(parse_edge_list("0 x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { .. })));
        assert_eq!(parse_edge_list("# nothing"), Err(Error::NoEdges));
    }

    #[test]
    fn graph6_decodes_small_graphs() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);
        assert!(parse_graph6(">>graph6<<C~").is_ok());
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("C~~"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("C\u{7f}"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("~"), Err(Error::Graph6(_))));
    }

    #[test]
    fn graph6_round_trips_named_graphs() {
        for name in ["tetrahedron", "cube", "dodecahedron", "prism:7", "bipyramid:3"] {
            let g: Graph = name.parse::<NamedGraph>().unwrap().build().unwrap();
            let back = parse_graph6(&to_graph6(&g)).unwrap();
            let mut a = g.edges().to_vec();
            let mut b = back.edges().to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn named_graph_sizes() {
        let cases = [
            ("tetrahedron", 4, 6),
            ("cube", 8, 12),
            ("octahedron", 6, 12),
            ("dodecahedron", 20, 30),
            ("icosahedron", 12, 30),
            ("prism:4", 8, 12),
            ("prism:7", 14, 21),
            ("pyramid:4", 5, 8),
            ("bipyramid:3", 5, 9),
        ];
        for (name, n, m) in cases {
            let g = name.parse::<NamedGraph>().unwrap().build().unwrap();
            assert_eq!((g.n(), g.m()), (n, m), "{name}");
            let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            assert_eq!(degree_sum, 2 * g.m(), "{name}");
            assert!(g.is_normalized(), "{name}");
        }
    }

    #[test]
    fn named_graph_errors() {
        assert!(matches!("prism:2".parse::<NamedGraph>(), Err(Error::InvalidParameter(_))));
        assert!(matches!("torus".parse::<NamedGraph>(), Err(Error::UnknownGraph(_))));
        assert!(matches!("cube:3".parse::<NamedGraph>(), Err(Error::UnknownGraph(_))));
        assert_eq!("PRISM(5)".parse::<NamedGraph>(), Ok(NamedGraph::Prism(5)));
        assert_eq!(named_graph("pyramid", Some(4)).unwrap().m(), 8);
    }

    #[test]
    fn normalization() {
        let c4 = parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap();
        let (g, p) = normalize_base_edge(&c4);
        assert!(p.is_identity());
        assert_eq!(g, c4);

        let path = parse_edge_list("0 2\n2 1").unwrap();
        let (g, p) = normalize_base_edge(&path);
        assert_eq!(p.image(), &[0, 2, 1]);
        assert!(g.is_adjacent(0, 1));
        let (again, q) = normalize_base_edge(&g);
        assert!(q.is_identity());
        assert_eq!(again, g);
    }
}
