use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use tracenum::graph::to_graph6;
use tracenum::oracle::{self, Scope};
use tracenum::trace::{is_canonical, is_d_stable, is_double_trace, is_strong, orientation_class};
use tracenum::{
    apply_symmetry, automorphisms, normalize_base_edge, parse_graph6, AutGroup, DoubleTrace,
    EnumerationConfig, EnumerationOptions, Enumerator, Graph, NamedGraph, Orientation,
    Permutation, SymmetryElement, TraceKind,
};

/// A connected graph on `n` vertices: a random tree plus random extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..80).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..2 * n);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> =
                parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().iter().copied().collect()
}

struct Pool {
    graph: Graph,
    group: AutGroup,
    traces: Vec<DoubleTrace>,
}

fn pools() -> &'static [Pool] {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        [NamedGraph::Tetrahedron, NamedGraph::Prism(3), NamedGraph::Pyramid(4)]
            .into_iter()
            .map(|named| {
                let graph = named.build().unwrap();
                let traces =
                    oracle::brute_enumerate(&graph, EnumerationConfig::any(), Scope::AllStarts).unwrap();
                Pool { group: automorphisms(&graph), graph, traces }
            })
            .collect()
    })
}

fn pick_gamma(group: &AutGroup, len: usize, pi: usize, shift: usize, reversed: bool) -> SymmetryElement {
    SymmetryElement { pi: group.get(pi % group.order()).clone(), shift: shift % len, reversed }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_roundtrip(g in connected_graph()) {
        let text = to_graph6(&g);
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(edge_set(&back), edge_set(&g));
    }

    #[test]
    fn predicates_invariant_under_symmetry(
        which in 0usize..3,
        idx in any::<prop::sample::Index>(),
        pi in any::<usize>(),
        shift in any::<usize>(),
        reversed in any::<bool>(),
    ) {
        let pool = &pools()[which];
        let g = &pool.graph;
        let t = idx.get(&pool.traces);
        let len = t.len();
        let gamma = pick_gamma(&pool.group, len, pi, shift, reversed);
        let image = DoubleTrace::new(&apply_symmetry(&gamma, &t.to_vec(), len).unwrap());
        prop_assert!(is_double_trace(g, &image.to_vec()));
        prop_assert_eq!(is_strong(g, t), is_strong(g, &image));
        prop_assert_eq!(is_d_stable(g, t, 1), is_d_stable(g, &image, 1));
        prop_assert_eq!(is_d_stable(g, t, 2), is_d_stable(g, &image, 2));
        prop_assert_eq!(orientation_class(g, t).0, orientation_class(g, &image).0);
        let back = apply_symmetry(&gamma.inverse(len), &image.to_vec(), len).unwrap();
        prop_assert_eq!(back, t.to_vec());
    }

    #[test]
    fn canonical_traces_are_orbit_minima(
        which in 0usize..3,
        idx in any::<prop::sample::Index>(),
        pi in any::<usize>(),
        shift in any::<usize>(),
        reversed in any::<bool>(),
    ) {
        let pool = &pools()[which];
        let t = idx.get(&pool.traces);
        let len = t.len();
        let gamma = pick_gamma(&pool.group, len, pi, shift, reversed);
        let image = DoubleTrace::new(&apply_symmetry(&gamma, &t.to_vec(), len).unwrap());
        if is_canonical(t, &pool.group) {
            prop_assert!(t <= &image);
            if &image != t {
                prop_assert!(!is_canonical(&image, &pool.group));
            }
        }
    }

    #[test]
    fn counts_ignore_vertex_labels(
        (which, image) in prop::sample::select(vec![NamedGraph::Tetrahedron, NamedGraph::Prism(3), NamedGraph::Pyramid(4)])
            .prop_flat_map(|named| {
                let n = named.build().unwrap().n();
                (Just(named), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            }),
    ) {
        let g = which.build().unwrap();
        let (relabeled, _) = normalize_base_edge(&g.relabel(&Permutation::from_image(image).unwrap()));
        for config in [
            EnumerationConfig::strong(),
            EnumerationConfig::new(TraceKind::Stable(1), Orientation::Antiparallel),
        ] {
            let a = Enumerator::new(&g, config).unwrap().count().unwrap();
            let b = Enumerator::new(&relabeled, config).unwrap().count().unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let cases = [
        (NamedGraph::Octahedron, EnumerationConfig::strong()),
        (NamedGraph::Prism(6), EnumerationConfig::strong()),
        (NamedGraph::Bipyramid(3), EnumerationConfig::any()),
        (NamedGraph::Cube, EnumerationConfig::new(TraceKind::Stable(2), Orientation::Any)),
    ];
    for (named, config) in cases {
        let g = named.build().unwrap();
        let run = |jobs| {
            let options = EnumerationOptions { jobs, ..EnumerationOptions::default() };
            Enumerator::new(&g, config).unwrap().options(options).traces().unwrap()
        };
        let sequential = run(Some(1));
        assert!(!sequential.is_empty());
        assert_eq!(run(Some(4)), sequential, "{named} {config}");
        assert_eq!(run(None), sequential, "{named} {config}");
    }
}

#[test]
fn count_matches_listing() {
    let g = NamedGraph::Prism(5).build().unwrap();
    for config in [EnumerationConfig::strong(), EnumerationConfig::any()] {
        let e = Enumerator::new(&g, config).unwrap();
        assert_eq!(e.count().unwrap(), e.traces().unwrap().len() as u64);
    }
}

#[test]
fn output_is_sorted_and_unique() {
    let g = NamedGraph::Octahedron.build().unwrap();
    let traces = Enumerator::new(&g, EnumerationConfig::strong()).unwrap().traces().unwrap();
    assert!(traces.windows(2).all(|w| w[0] < w[1]));
}
