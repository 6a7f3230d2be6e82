//! Latency-aware independent cascade with a hard deadline.

mod estimate;
mod exact;
mod simulate;

pub use estimate::{dump_trials, estimate_spread, SimulationParams, SpreadEstimate};
pub use exact::{
    exact_spread, exact_spread_table, exact_spread_with_cap, seed_mask, DEFAULT_ENUMERATION_CAP,
    MAX_ENUMERATION_EDGES, MAX_TABLE_NODES,
};
pub use simulate::{simulate_trial, NodeStatus, Simulator};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Probability that `u` is reached in one step by at least one seed:
/// `1 - prod(1 - P(s -> u))` over seeds with an edge into `u`, or 0 when no
/// seed points at `u`.
pub fn combined_activation_prob(g: &Graph, seeds: &[NodeId], u: NodeId) -> Result<f64> {
    g.check_node(u)?;
    seeds.iter().try_for_each(|&s| g.check_node(s))?;
    if seeds.contains(&u) {
        return Err(Error::NodeIsSeed(u.index()));
    }
    let mut miss = 1.0;
    let mut hit = false;
    for (s, a) in g.in_edges(u) {
        if seeds.contains(&s) {
            miss *= 1.0 - a.prob;
            hit = true;
        }
    }
    Ok(if hit { 1.0 - miss } else { 0.0 })
}
