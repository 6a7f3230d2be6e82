//! Small random instance generators for tests and benchmarks.

use std::collections::HashSet;

use rand::Rng;

use crate::graph::{Graph, GraphBuilder};
use crate::rng::seeded;

/// `n` nodes and `m` distinct random directed edges (no self-loops), each
/// with probability `prob`. Node `i` carries label `i`.
pub fn random_graph(n: usize, m: usize, prob: f64, seed: u64) -> Graph {
    assert!(n >= 2 || m == 0, "need two nodes for an edge");
    assert!(m <= n * (n - 1), "too many edges for {n} nodes");
    let mut rng = seeded(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert((u, v)) {
            edges.push((u, v, prob));
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are valid")
}

/// Like [`random_graph`] but with each edge probability drawn uniformly from
/// `(0, 1]`.
pub fn random_weighted_graph(n: usize, m: usize, seed: u64) -> Graph {
    let g = random_graph(n, m, 1.0, seed);
    let mut rng = seeded(seed ^ 0x5eed);
    let mut b = GraphBuilder::new(true);
    for u in g.nodes() {
        b.add_node(g.label(u));
    }
    for (u, v, _) in g.edges() {
        let p = 1.0 - rng.random::<f64>();
        b.add_edge(g.label(u), g.label(v), Some(p));
    }
    b.build()
}
