//! Named graphs and small-graph enumeration.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::{DiffusionPair, Edge, Graph};
use crate::iso::canonical_form;

const ISO_LEFT: [(usize, usize, i64); 10] = [
    (1, 2, 1),
    (1, 7, 1),
    (1, 8, 1),
    (2, 3, 1),
    (3, 4, 1),
    (4, 5, 1),
    (5, 6, 1),
    (6, 7, 1),
    (6, 8, 1),
    (7, 8, 2),
];

const ISO_RIGHT: [(usize, usize, i64); 10] = [
    (1, 2, 1),
    (1, 3, 1),
    (1, 8, 1),
    (2, 3, 1),
    (3, 4, 1),
    (4, 5, 1),
    (5, 6, 1),
    (6, 7, 1),
    (6, 8, 2),
    (7, 8, 1),
];

/// The smallest bridgeless pair of non-isomorphic Laplacian-isospectral
/// simple graphs (8 vertices, 10 edges, Betti number 3), each with one
/// edge labelled 2 and the rest labelled 1.
pub fn isospectral_pair() -> (DiffusionPair, DiffusionPair) {
    let left = DiffusionPair::new_allow_repeated_labels(8, &ISO_LEFT).expect("valid pair");
    let right = DiffusionPair::new_allow_repeated_labels(8, &ISO_RIGHT).expect("valid pair");
    (left, right)
}

/// The two graphs of [`isospectral_pair`] without labels.
pub fn isospectral_graphs() -> (Graph, Graph) {
    let (a, b) = isospectral_pair();
    (a.graph().clone(), b.graph().clone())
}

/// Edges shared by both graphs of the pair; the remaining edge of each side
/// is `(1, 7)` on the left and `(1, 3)` on the right.
pub fn isospectral_common_edges() -> Vec<Edge> {
    let (a, b) = isospectral_graphs();
    let right: BTreeSet<Edge> = b.edges().iter().copied().collect();
    a.edges()
        .iter()
        .copied()
        .filter(|e| right.contains(e))
        .collect()
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// in order of edge count.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "enumeration supports 1..=7 vertices");
    let pairs: Vec<Edge> = Graph::complete(n).edges().to_vec();
    let m = pairs.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut masks: Vec<u64> = (0..1u64 << m).collect();
    masks.sort_by_key(|x| x.count_ones());
    for mask in masks {
        let edges = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]);
        let g = Graph::new(n, edges).expect("subset of complete graph");
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// Connected isomorphism classes on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

/// Uniform edge subsets of `K_n`, rejected until connected.
pub fn random_connected_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let pairs = Graph::complete(n).edges().to_vec();
    loop {
        let edges = pairs.iter().copied().filter(|_| rng.gen_bool(0.5));
        let g = Graph::new(n, edges).expect("subset of complete graph");
        if g.is_connected() {
            return g;
        }
    }
}
