//! Exact expected spread by enumerating every joint edge outcome.
//!
//! Each edge either fails or succeeds with a specific delay offset. For one
//! joint outcome the influenced set is the set of nodes whose earliest-arrival
//! time from the seeds over the live edges is within the deadline. Only usable
//! for tiny instances.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;
pub const MAX_ENUMERATION_EDGES: usize = 25;
/// Subset tables are indexed by bitmask.
pub const MAX_TABLE_NODES: usize = 16;

struct Outcomes {
    src: usize,
    dst: usize,
    /// `(probability, offset)`; offset `None` means the edge is not live.
    branches: Vec<(f64, Option<u32>)>,
}

fn edge_outcomes(g: &Graph, cap: u128) -> Result<Vec<Outcomes>> {
    if g.edge_count() > MAX_ENUMERATION_EDGES {
        return Err(Error::InvalidParameter(format!(
            "exact enumeration supports at most {MAX_ENUMERATION_EDGES} edges, graph has {}",
            g.edge_count()
        )));
    }
    let mut all = Vec::with_capacity(g.edge_count());
    let mut total: u128 = 1;
    for (u, v, a) in g.edges() {
        let theta = g.threshold(v);
        let mut fail = 1.0 - a.prob;
        let mut branches = Vec::new();
        for (i, &phi) in a.delay.phis().iter().enumerate() {
            let p = a.prob * phi;
            if p == 0.0 {
                continue;
            }
            if theta > 0.0 && p < theta {
                fail += p;
            } else {
                branches.push((p, Some(i as u32 + 1)));
            }
        }
        if fail > 0.0 {
            branches.push((fail, None));
        }
        total = total.saturating_mul(branches.len() as u128);
        if total > cap {
            return Err(Error::EnumerationCap { branches: total, cap });
        }
        all.push(Outcomes {
            src: u.index(),
            dst: v.index(),
            branches,
        });
    }
    Ok(all)
}

/// Visits every joint outcome with its probability and per-edge offsets.
fn enumerate<F: FnMut(f64, &[Option<u32>])>(outcomes: &[Outcomes], visit: &mut F) {
    fn rec<F: FnMut(f64, &[Option<u32>])>(
        outcomes: &[Outcomes],
        k: usize,
        prob: f64,
        live: &mut Vec<Option<u32>>,
        visit: &mut F,
    ) {
        if k == outcomes.len() {
            visit(prob, live);
            return;
        }
        for &(p, off) in &outcomes[k].branches {
            live.push(off);
            rec(outcomes, k + 1, prob * p, live, visit);
            live.pop();
        }
    }
    let mut live = Vec::with_capacity(outcomes.len());
    rec(outcomes, 0, 1.0, &mut live, visit);
}

/// Earliest arrival times from `sources` (all at time 0) over live edges.
fn arrival_times(n: usize, outcomes: &[Outcomes], live: &[Option<u32>], sources: &[usize]) -> Vec<u64> {
    let mut dist = vec![u64::MAX; n];
    for &s in sources {
        dist[s] = 0;
    }
    // Bellman-Ford; n is tiny
    for _ in 0..n {
        let mut changed = false;
        for (o, off) in outcomes.iter().zip(live) {
            if let Some(off) = off {
                let d = dist[o.src];
                if d != u64::MAX && d + u64::from(*off) < dist[o.dst] {
                    dist[o.dst] = d + u64::from(*off);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

pub fn exact_spread(g: &Graph, seeds: &[NodeId], deadline: u32) -> Result<f64> {
    exact_spread_with_cap(g, seeds, deadline, DEFAULT_ENUMERATION_CAP)
}

pub fn exact_spread_with_cap(g: &Graph, seeds: &[NodeId], deadline: u32, cap: u128) -> Result<f64> {
    seeds.iter().try_for_each(|&s| g.check_node(s))?;
    if seeds.is_empty() {
        return Ok(0.0);
    }
    let outcomes = edge_outcomes(g, cap)?;
    let sources: Vec<usize> = seeds.iter().map(|s| s.index()).collect();
    let n = g.node_count();
    // seeds are active in every outcome; only the rest is weighted
    let mut is_seed = vec![false; n];
    sources.iter().for_each(|&s| is_seed[s] = true);
    let mut total = 0.0;
    enumerate(&outcomes, &mut |prob, live| {
        let dist = arrival_times(n, &outcomes, live, &sources);
        let count = (0..n).filter(|&v| !is_seed[v] && dist[v] <= u64::from(deadline)).count();
        total += prob * count as f64;
    });
    Ok(is_seed.iter().filter(|&&s| s).count() as f64 + total)
}

/// Exact spread of every seed subset, indexed by bitmask over node ids
/// (`table[0] == 0`).
pub fn exact_spread_table(g: &Graph, deadline: u32, cap: u128) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n > MAX_TABLE_NODES {
        return Err(Error::InvalidParameter(format!(
            "subset tables support at most {MAX_TABLE_NODES} nodes, graph has {n}"
        )));
    }
    let outcomes = edge_outcomes(g, cap)?;
    let subsets = 1usize << n;
    let mut table = vec![0.0; subsets];
    let mut reached_by = vec![0u32; n];
    enumerate(&outcomes, &mut |prob, live| {
        reached_by.iter_mut().for_each(|m| *m = 0);
        for s in 0..n {
            let dist = arrival_times(n, &outcomes, live, &[s]);
            for (v, d) in dist.iter().enumerate() {
                if *d <= u64::from(deadline) {
                    reached_by[v] |= 1 << s;
                }
            }
        }
        for (mask, slot) in table.iter_mut().enumerate().skip(1) {
            let count = reached_by
                .iter()
                .enumerate()
                .filter(|&(v, &r)| mask >> v & 1 == 0 && r & mask as u32 != 0)
                .count();
            *slot += prob * count as f64;
        }
    });
    for (mask, slot) in table.iter_mut().enumerate() {
        *slot += mask.count_ones() as f64;
    }
    Ok(table)
}

/// Bitmask of a seed list, for indexing [`exact_spread_table`].
pub fn seed_mask(seeds: &[NodeId]) -> usize {
    seeds.iter().fold(0, |m, s| m | (1 << s.index()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DelayDistribution;

    #[test]
    fn single_node() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(exact_spread(&g, &[NodeId(0)], 5).unwrap(), 1.0);
    }

    #[test]
    fn single_edge_is_one_plus_p() {
        let g = Graph::from_edges(2, &[(0, 1, 0.3)]).unwrap();
        // 1 - 0.3 is not exact in binary, so allow one rounding step
        assert!((exact_spread(&g, &[NodeId(0)], 1).unwrap() - 1.3).abs() < 1e-15);
        assert_eq!(exact_spread(&g, &[NodeId(0)], 0).unwrap(), 1.0);
    }

    #[test]
    fn zero_deadline_is_exactly_the_seed_count() {
        let edges = [(0, 1, 0.7), (1, 2, 0.3), (2, 0, 0.1), (0, 3, 0.9), (3, 1, 0.65)];
        let mut g = Graph::from_edges(4, &edges).unwrap();
        for &(u, v, _) in &edges {
            let delay = DelayDistribution::new(vec![0.3, 0.3, 0.4]).unwrap();
            g.set_edge_delay(NodeId::from(u), NodeId::from(v), delay).unwrap();
        }
        assert_eq!(exact_spread(&g, &[NodeId(0), NodeId(2)], 0).unwrap(), 2.0);
        let table = exact_spread_table(&g, 0, DEFAULT_ENUMERATION_CAP).unwrap();
        for (mask, &value) in table.iter().enumerate() {
            assert_eq!(value, mask.count_ones() as f64);
        }
    }

    #[test]
    fn path_with_short_deadline() {
        let g = Graph::from_edges(3, &[(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        assert_eq!(exact_spread(&g, &[NodeId(0)], 1).unwrap(), 1.5);
        assert_eq!(exact_spread(&g, &[NodeId(0)], 2).unwrap(), 1.75);
    }

    #[test]
    fn delays_shift_arrivals() {
        let mut g = Graph::from_edges(2, &[(0, 1, 0.5)]).unwrap();
        g.set_edge_delay(NodeId(0), NodeId(1), DelayDistribution::new(vec![0.5, 0.5]).unwrap())
            .unwrap();
        assert_eq!(exact_spread(&g, &[NodeId(0)], 1).unwrap(), 1.25);
        assert_eq!(exact_spread(&g, &[NodeId(0)], 2).unwrap(), 1.5);
    }

    #[test]
    fn table_agrees_with_direct_enumeration() {
        let mut g = Graph::from_edges(
            4,
            &[(0, 1, 0.5), (1, 2, 0.25), (0, 2, 0.75), (2, 3, 0.5), (3, 0, 0.5)],
        )
        .unwrap();
        g.set_edge_delay(NodeId(0), NodeId(2), DelayDistribution::new(vec![0.5, 0.5]).unwrap())
            .unwrap();
        let table = exact_spread_table(&g, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(table[0], 0.0);
        for mask in 1..16usize {
            let seeds: Vec<NodeId> = (0..4).filter(|i| mask & (1 << i) != 0).map(NodeId::from).collect();
            let direct = exact_spread(&g, &seeds, 2).unwrap();
            assert!((direct - table[mask]).abs() < 1e-12, "{mask}");
            assert_eq!(seed_mask(&seeds), mask);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = crate::synth::random_graph(8, 20, 0.5, 1);
        assert!(matches!(
            exact_spread_with_cap(&g, &[NodeId(0)], 3, 1000),
            Err(Error::EnumerationCap { .. })
        ));
        let big = crate::synth::random_graph(10, 30, 0.5, 1);
        assert!(exact_spread(&big, &[NodeId(0)], 3).is_err());
    }
}
