use std::time::Instant;

use super::{best_candidate, MonteCarloOracle, SeedSet, SelectionReport, SpreadOracle};
use crate::diffusion::SimulationParams;
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Above this many nodes the eager simulation greedy is impractically slow.
pub const NAIVE_FEASIBILITY_LIMIT: usize = 1000;

/// Eager cost-benefit greedy with marginal gains from Monte-Carlo estimates.
pub fn greedy_naive(g: &Graph, budget: u64, params: &SimulationParams) -> Result<SelectionReport> {
    if g.node_count() > NAIVE_FEASIBILITY_LIMIT {
        log::warn!(
            "naive greedy on {} nodes runs a spread estimate per candidate per round; expect a long run",
            g.node_count()
        );
    }
    let oracle = MonteCarloOracle {
        graph: g,
        params: *params,
    };
    greedy_naive_with(g, budget, &oracle)
}

/// Eager greedy over any spread oracle: each round adds the affordable node
/// with the largest `(f(S + v) - f(S)) / cost(v)`, lower id on ties.
pub fn greedy_naive_with<O: SpreadOracle + ?Sized>(g: &Graph, budget: u64, oracle: &O) -> Result<SelectionReport> {
    let started = Instant::now();
    let mut set = SeedSet::new(g, budget);
    let mut current = 0.0;
    let mut evaluations = 0u64;
    let mut candidate: Vec<NodeId> = Vec::new();
    loop {
        let mut spreads = vec![f64::NAN; g.node_count()];
        let mut failure = None;
        let best = best_candidate(g, &set, |v| {
            candidate.clear();
            candidate.extend_from_slice(set.nodes());
            candidate.push(v);
            evaluations += 1;
            match oracle.spread(&candidate) {
                Ok(s) => {
                    spreads[v.index()] = s;
                    (s - current) / g.cost(v) as f64
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NEG_INFINITY
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let Some(best) = best else { break };
        current = spreads[best.node.index()];
        set.push(g, best.node);
        log::debug!("naive: seed {} spread {current:.3}", best.node);
    }
    Ok(SelectionReport {
        seed_set: set,
        spread_evaluations: evaluations,
        gain_evaluations: evaluations,
        wall_time: started.elapsed(),
    })
}
