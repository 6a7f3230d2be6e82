use super::{best_candidate, SeedSet};
use crate::graph::{Graph, NodeId};

/// Out-degree order, highest first, lower id on ties; each node is taken if
/// it still fits in the budget.
pub fn baseline_deg(g: &Graph, budget: u64) -> SeedSet {
    let mut order: Vec<NodeId> = g.nodes().collect();
    order.sort_by(|&a, &b| g.out_degree(b).cmp(&g.out_degree(a)).then(a.cmp(&b)));
    let mut set = SeedSet::new(g, budget);
    for v in order {
        if set.can_add(g, v) {
            set.push(g, v);
        }
    }
    set
}

/// Amount subtracted from a degree `d` with `t` seeded in-neighbours, `p`
/// being the probability on the edge from the latest of them.
pub fn degree_discount(d: f64, t: f64, p: f64) -> f64 {
    2.0 * t + (d - t) * t * p
}

/// Degree-discount heuristic.
pub fn baseline_ddh(g: &Graph, budget: u64) -> SeedSet {
    discounted(g, budget, |d, t, p| d - degree_discount(d, t, p))
}

/// Single-discount heuristic: one unit off per seeded in-neighbour.
pub fn baseline_sdh(g: &Graph, budget: u64) -> SeedSet {
    discounted(g, budget, |d, t, _| d - t)
}

fn discounted<F: Fn(f64, f64, f64) -> f64>(g: &Graph, budget: u64, rule: F) -> SeedSet {
    let mut score: Vec<f64> = g.nodes().map(|v| g.out_degree(v) as f64).collect();
    let mut seeded_in = vec![0u32; g.node_count()];
    let mut set = SeedSet::new(g, budget);
    while let Some(best) = best_candidate(g, &set, |v| score[v.index()]) {
        let u = best.node;
        set.push(g, u);
        for (v, a) in g.out_edges(u) {
            if set.contains(v) {
                continue;
            }
            seeded_in[v.index()] += 1;
            let d = g.out_degree(v) as f64;
            score[v.index()] = rule(d, seeded_in[v.index()] as f64, a.prob);
        }
    }
    set
}
