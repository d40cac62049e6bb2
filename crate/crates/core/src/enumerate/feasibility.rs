//! Existence characterizations for parallel, antiparallel and d-stable
//! strong traces, used as a priori emptiness checks.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest edge count for which spanning trees are enumerated.
pub const SPANNING_TREE_EDGE_LIMIT: usize = 24;

/// A connected graph has a parallel strong trace iff it is Eulerian.
pub fn admits_parallel_strong(graph: &Graph) -> bool {
    graph.is_eulerian()
}

/// A graph has a d-stable trace iff its minimum degree is at least `d`.
pub fn admits_d_stable(graph: &Graph, d: usize) -> bool {
    graph.min_degree() >= d
}

/// A graph has an antiparallel strong trace iff some spanning tree leaves a
/// co-tree whose every connected component has an even number of edges.
///
/// The co-tree always has `m - n + 1` edges, so an odd count answers `false`
/// immediately; otherwise spanning trees are enumerated, which is refused
/// above [`SPANNING_TREE_EDGE_LIMIT`] edges.
pub fn admits_antiparallel_strong(graph: &Graph) -> Result<bool> {
    let cotree_edges = graph.m() + 1 - graph.n();
    if cotree_edges % 2 == 1 {
        return Ok(false);
    }
    if graph.m() > SPANNING_TREE_EDGE_LIMIT {
        return Err(Error::SizeGuard {
            what: "edge count for spanning tree search",
            limit: SPANNING_TREE_EDGE_LIMIT,
            actual: graph.m(),
        });
    }
    let mut in_tree = vec![false; graph.m()];
    let parent: Vec<usize> = (0..graph.n()).collect();
    Ok(search_trees(graph, 0, graph.n() - 1, &mut in_tree, parent))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn search_trees(
    graph: &Graph,
    edge: usize,
    missing: usize,
    in_tree: &mut [bool],
    parent: Vec<usize>,
) -> bool {
    if missing == 0 {
        return cotree_components_even(graph, in_tree);
    }
    if graph.m() - edge < missing {
        return false;
    }
    let (u, v) = graph.edges()[edge];
    let mut with = parent.clone();
    let (ru, rv) = (find(&mut with, u), find(&mut with, v));
    if ru != rv {
        with[ru] = rv;
        in_tree[edge] = true;
        let found = search_trees(graph, edge + 1, missing - 1, in_tree, with);
        in_tree[edge] = false;
        if found {
            return true;
        }
    }
    search_trees(graph, edge + 1, missing, in_tree, parent)
}

fn cotree_components_even(graph: &Graph, in_tree: &[bool]) -> bool {
    let mut parent: Vec<usize> = (0..graph.n()).collect();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if !in_tree[e] {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
    }
    let mut edges_in = vec![0usize; graph.n()];
    for (e, &(u, _)) in graph.edges().iter().enumerate() {
        if !in_tree[e] {
            edges_in[find(&mut parent, u)] += 1;
        }
    }
    edges_in.iter().all(|c| c % 2 == 0)
}
