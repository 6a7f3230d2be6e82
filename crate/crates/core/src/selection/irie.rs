use super::{best_candidate, SeedSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const IRIE_DEFAULT_ALPHA: f64 = 0.7;
pub const IRIE_DEFAULT_ITERATIONS: u32 = 20;

/// Influence ranks from `iterations` synchronous rounds of
/// `r(u) = 1 + alpha * sum_{u->v} P(u->v) r(v)`, starting at `r = 1`.
///
/// A simplified rank propagation, not the full rank/estimate scheme of the
/// original IRIE.
pub fn influence_ranks(g: &Graph, alpha: f64, iterations: u32) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must be in (0, 1), got {alpha}")));
    }
    if iterations == 0 {
        return Err(Error::InvalidParameter("iterations must be at least 1".into()));
    }
    let mut rank = vec![1.0; g.node_count()];
    let mut next = vec![0.0; g.node_count()];
    for _ in 0..iterations {
        for u in g.nodes() {
            let s: f64 = g.out_edges(u).map(|(v, a)| a.prob * rank[v.index()]).sum();
            next[u.index()] = 1.0 + alpha * s;
        }
        std::mem::swap(&mut rank, &mut next);
    }
    Ok(rank)
}

/// Picks the affordable node of highest rank, then scales the ranks of its
/// out-neighbours by `1 - P(u->v)`, until nothing fits.
pub fn baseline_irie(g: &Graph, budget: u64, alpha: f64, iterations: u32) -> Result<SeedSet> {
    let mut rank = influence_ranks(g, alpha, iterations)?;
    let mut set = SeedSet::new(g, budget);
    while let Some(best) = best_candidate(g, &set, |v| rank[v.index()]) {
        set.push(g, best.node);
        for (v, a) in g.out_edges(best.node) {
            rank[v.index()] *= 1.0 - a.prob;
        }
    }
    Ok(set)
}
