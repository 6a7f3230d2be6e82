//! Random tiny instances for the oracle comparisons.
#![allow(dead_code)]

use rand::Rng;
use tbim::graph::NodeAttr;
use tbim::rng::seeded;
use tbim::{DelayDistribution, Graph, NodeId};

/// Offset pmfs whose entries are multiples of 1/4.
const DYADIC_PHIS: [&[f64]; 6] = [
    &[1.0],
    &[0.5, 0.5],
    &[0.75, 0.25],
    &[0.25, 0.75],
    &[0.5, 0.25, 0.25],
    &[0.25, 0.25, 0.5],
];

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub max_edges: usize,
    pub max_offset: usize,
    /// Probabilities in eighths and quarter-valued pmfs, so that every
    /// expectation is an exact binary fraction.
    pub dyadic: bool,
    /// Give about a third of the nodes a positive threshold.
    pub thresholds: bool,
}

impl Shape {
    pub fn tiny(max_nodes: usize, max_edges: usize, max_offset: usize) -> Self {
        Shape {
            min_nodes: 1,
            max_nodes,
            max_edges,
            max_offset,
            dyadic: false,
            thresholds: false,
        }
    }
}

pub fn random_instance(seed: u64, shape: Shape) -> Graph {
    let mut rng = seeded(seed);
    let n = rng.random_range(shape.min_nodes..=shape.max_nodes);
    let possible = n * (n - 1);
    let m = rng.random_range(0..=shape.max_edges.min(possible));
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    // partial Fisher-Yates for m distinct pairs
    for i in 0..m {
        let j = rng.random_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let edges: Vec<(usize, usize, f64)> = pairs[..m]
        .iter()
        .map(|&(u, v)| {
            let p = if shape.dyadic {
                rng.random_range(1..=8) as f64 / 8.0
            } else {
                rng.random_range(0.05..=1.0)
            };
            (u, v, p)
        })
        .collect();
    let mut g = Graph::from_edges(n, &edges).unwrap();
    for &(u, v, _) in &edges {
        let delay = if shape.dyadic {
            let choices: Vec<&[f64]> = DYADIC_PHIS.iter().copied().filter(|p| p.len() <= shape.max_offset).collect();
            DelayDistribution::new(choices[rng.random_range(0..choices.len())].to_vec()).unwrap()
        } else {
            let l = rng.random_range(1..=shape.max_offset);
            let w: Vec<f64> = (0..l).map(|_| rng.random_range(0.05..1.0)).collect();
            let s: f64 = w.iter().sum();
            DelayDistribution::new(w.iter().map(|x| x / s).collect()).unwrap()
        };
        g.set_edge_delay(NodeId::from(u), NodeId::from(v), delay).unwrap();
    }
    if shape.thresholds {
        for v in 0..n {
            if rng.random_range(0..3) == 0 {
                let threshold = [0.125, 0.25, 0.5][rng.random_range(0..3)];
                g.set_node_attr(NodeId::from(v), NodeAttr { threshold, cost: 1 }).unwrap();
            }
        }
    }
    g
}

/// A random non-empty seed subset.
pub fn random_seeds(n: usize, seed: u64) -> Vec<NodeId> {
    let mut rng = seeded(seed);
    loop {
        let s: Vec<NodeId> = (0..n).filter(|_| rng.random_bool(0.4)).map(NodeId::from).collect();
        if !s.is_empty() {
            return s;
        }
    }
}
