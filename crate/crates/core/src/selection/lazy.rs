use std::collections::BinaryHeap;
use std::time::Instant;

use super::{
    approx_marginal_gain, single_node_spreads, GainMode, MonteCarloOracle, Scored, SeedReach, SeedSet,
    SelectionReport, SpreadOracle,
};
use crate::diffusion::SimulationParams;
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Lazy-evaluation greedy.
///
/// Every candidate sits in a max-heap under its last computed gain per unit
/// cost. Because gains only shrink as seeds are added, a popped entry that was
/// computed against the current seed set is the true maximum and is accepted;
/// a stale one is recomputed and pushed back.
pub fn lazy_greedy(g: &Graph, budget: u64, params: &SimulationParams, mode: GainMode) -> Result<SelectionReport> {
    let oracle = MonteCarloOracle {
        graph: g,
        params: *params,
    };
    match mode {
        GainMode::Simulation => lazy_greedy_with(g, budget, &oracle),
        GainMode::Approx => lazy_approx(g, budget, &oracle),
    }
}

struct Pending {
    key: Scored,
    /// Seed-set size the gain was computed against.
    round: usize,
    /// Oracle value of `S + v` behind the gain (simulation mode only).
    spread_with: f64,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pending {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

/// Lazy greedy with gains `(f(S + v) - f(S)) / cost(v)` from `oracle`.
pub fn lazy_greedy_with<O: SpreadOracle + ?Sized>(g: &Graph, budget: u64, oracle: &O) -> Result<SelectionReport> {
    let started = Instant::now();
    let mut set = SeedSet::new(g, budget);
    let mut evaluations = 0u64;
    let mut heap = BinaryHeap::with_capacity(g.node_count());
    for v in g.nodes().filter(|&v| set.can_add(g, v)) {
        let s = oracle.spread(&[v])?;
        evaluations += 1;
        heap.push(Pending {
            key: Scored {
                score: s / g.cost(v) as f64,
                node: v,
            },
            round: 0,
            spread_with: s,
        });
    }
    let mut current = 0.0;
    let mut candidate: Vec<NodeId> = Vec::new();
    while let Some(top) = heap.pop() {
        let v = top.key.node;
        if !set.can_add(g, v) {
            continue;
        }
        if top.round == set.len() {
            set.push(g, v);
            current = top.spread_with;
            continue;
        }
        candidate.clear();
        candidate.extend_from_slice(set.nodes());
        candidate.push(v);
        let s = oracle.spread(&candidate)?;
        evaluations += 1;
        heap.push(Pending {
            key: Scored {
                score: (s - current) / g.cost(v) as f64,
                node: v,
            },
            round: set.len(),
            spread_with: s,
        });
    }
    Ok(SelectionReport {
        seed_set: set,
        spread_evaluations: evaluations,
        gain_evaluations: evaluations,
        wall_time: started.elapsed(),
    })
}

fn lazy_approx<O: SpreadOracle + ?Sized>(g: &Graph, budget: u64, oracle: &O) -> Result<SelectionReport> {
    let started = Instant::now();
    let sigma = single_node_spreads(g, oracle)?;
    let mut set = SeedSet::new(g, budget);
    let mut reach = SeedReach::new(g.node_count());
    let mut gain_evaluations = 0u64;
    let mut heap = BinaryHeap::with_capacity(g.node_count());
    for v in g.nodes().filter(|&v| set.can_add(g, v)) {
        gain_evaluations += 1;
        heap.push(Pending {
            key: Scored {
                score: approx_marginal_gain(g, &sigma, &reach, v) / g.cost(v) as f64,
                node: v,
            },
            round: 0,
            spread_with: f64::NAN,
        });
    }
    while let Some(top) = heap.pop() {
        let v = top.key.node;
        if !set.can_add(g, v) {
            continue;
        }
        if top.round == set.len() {
            set.push(g, v);
            reach.add_seed(g, v);
            continue;
        }
        gain_evaluations += 1;
        heap.push(Pending {
            key: Scored {
                score: approx_marginal_gain(g, &sigma, &reach, v) / g.cost(v) as f64,
                node: v,
            },
            round: set.len(),
            spread_with: f64::NAN,
        });
    }
    Ok(SelectionReport {
        seed_set: set,
        spread_evaluations: g.node_count() as u64,
        gain_evaluations,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::{greedy_approx, greedy_naive_with, ExactOracle};

    #[test]
    fn approx_mode_matches_eager() {
        let g = crate::graph::assign_costs(crate::synth::random_graph(120, 600, 0.2, 5), 1, 4, 5).unwrap();
        let params = SimulationParams::new(5, 200, 8).unwrap();
        let eager = greedy_approx(&g, 30, &params).unwrap();
        let lazy = lazy_greedy(&g, 30, &params, GainMode::Approx).unwrap();
        assert_eq!(eager.seed_set, lazy.seed_set);
        assert!(lazy.gain_evaluations <= eager.gain_evaluations);
    }

    #[test]
    fn exact_oracle_matches_eager() {
        let g = Graph::from_edges(5, &[(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5), (0, 4, 0.25), (4, 3, 0.5)])
            .unwrap()
            .with_costs(&[2, 1, 1, 2, 1])
            .unwrap();
        let oracle = ExactOracle { graph: &g, deadline: 3 };
        let eager = greedy_naive_with(&g, 4, &oracle).unwrap();
        let lazy = lazy_greedy_with(&g, 4, &oracle).unwrap();
        assert_eq!(eager.seed_set, lazy.seed_set);
        assert!(lazy.spread_evaluations <= eager.spread_evaluations);
    }

    #[test]
    fn zero_budget() {
        let g = crate::synth::random_graph(10, 20, 0.5, 1);
        let params = SimulationParams::new(5, 10, 8).unwrap();
        for mode in [GainMode::Approx, GainMode::Simulation] {
            let r = lazy_greedy(&g, 0, &params, mode).unwrap();
            assert!(r.seed_set.is_empty());
        }
    }
}
