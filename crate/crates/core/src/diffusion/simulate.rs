use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

const UNSET: u32 = u32::MAX;

/// Per-node outcome of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    NotInfluenced,
    /// Scheduled to activate at the given time, which may still move earlier.
    InfluencedWithDelay(u32),
    Influenced(u32),
}

/// Reusable scratch space for running trials on one graph.
///
/// Pending activations sit in a min-queue keyed by tentative time. A node is
/// influenced when its earliest tentative time is popped; at that point it
/// makes one attempt per out-edge whose target is not yet influenced.
pub struct Simulator<'g> {
    graph: &'g Graph,
    time: Vec<u32>,
    done: Vec<bool>,
    touched: Vec<NodeId>,
    queue: BinaryHeap<Reverse<(u32, NodeId)>>,
}

impl<'g> Simulator<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.node_count();
        Simulator {
            graph,
            time: vec![UNSET; n],
            done: vec![false; n],
            touched: Vec::new(),
            queue: BinaryHeap::new(),
        }
    }

    /// Runs one trial and returns how many nodes are influenced by `deadline`.
    ///
    /// Seeds must be valid ids; duplicates are ignored.
    pub fn run<R: Rng + ?Sized>(&mut self, seeds: &[NodeId], deadline: u32, rng: &mut R) -> usize {
        self.reset();
        let g = self.graph;
        for &s in seeds {
            if self.time[s.index()] != 0 {
                self.touched.push(s);
                self.time[s.index()] = 0;
                self.queue.push(Reverse((0, s)));
            }
        }
        let mut influenced = 0;
        while let Some(Reverse((t, u))) = self.queue.pop() {
            let ui = u.index();
            if self.done[ui] || t != self.time[ui] {
                continue;
            }
            self.done[ui] = true;
            influenced += 1;
            if t >= deadline {
                // every offset is at least 1
                continue;
            }
            for (v, edge) in g.out_edges(u) {
                let vi = v.index();
                if self.done[vi] {
                    continue;
                }
                if rng.random::<f64>() >= edge.prob {
                    continue;
                }
                let offset = edge.delay.sample(rng.random::<f64>());
                let theta = g.threshold(v);
                if theta > 0.0 && edge.prob * edge.delay.phi(offset) < theta {
                    continue;
                }
                let at = t.saturating_add(offset as u32);
                if at > deadline || at >= self.time[vi] {
                    continue;
                }
                if self.time[vi] == UNSET {
                    self.touched.push(v);
                }
                self.time[vi] = at;
                self.queue.push(Reverse((at, v)));
            }
        }
        influenced
    }

    /// Nodes influenced in the last trial, in increasing id order.
    pub fn influenced(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .touched
            .iter()
            .copied()
            .filter(|v| self.done[v.index()])
            .collect();
        out.sort_unstable();
        out
    }

    /// Status of every node after the last trial.
    pub fn statuses(&self) -> Vec<NodeStatus> {
        (0..self.graph.node_count())
            .map(|i| match (self.done[i], self.time[i]) {
                (true, t) => NodeStatus::Influenced(t),
                (false, UNSET) => NodeStatus::NotInfluenced,
                (false, t) => NodeStatus::InfluencedWithDelay(t),
            })
            .collect()
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.time[v.index()] = UNSET;
            self.done[v.index()] = false;
        }
        self.queue.clear();
    }
}

pub(crate) fn validate_seeds(g: &Graph, seeds: &[NodeId]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    seeds.iter().try_for_each(|&s| g.check_node(s))
}

/// One diffusion trial from `seeds` with the given random stream; returns the
/// nodes influenced no later than `deadline`, seeds included.
pub fn simulate_trial<R: Rng + ?Sized>(
    g: &Graph,
    seeds: &[NodeId],
    deadline: u32,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    validate_seeds(g, seeds)?;
    let mut sim = Simulator::new(g);
    sim.run(seeds, deadline, rng);
    Ok(sim.influenced())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DelayDistribution;
    use crate::rng::trial_stream;

    fn path(prob: f64, delay: DelayDistribution) -> Graph {
        let mut g = Graph::from_edges(2, &[(0, 1, prob)]).unwrap();
        g.set_edge_delay(NodeId(0), NodeId(1), delay).unwrap();
        g
    }

    #[test]
    fn certain_edge_activates_next_step() {
        let g = path(1.0, DelayDistribution::immediate());
        let mut rng = trial_stream(1, 0);
        let mut sim = Simulator::new(&g);
        assert_eq!(sim.run(&[NodeId(0)], 10, &mut rng), 2);
        assert_eq!(
            sim.statuses(),
            vec![NodeStatus::Influenced(0), NodeStatus::Influenced(1)]
        );
    }

    #[test]
    fn late_arrival_misses_the_deadline() {
        let g = path(1.0, DelayDistribution::point(11).unwrap());
        let mut rng = trial_stream(1, 0);
        let out = simulate_trial(&g, &[NodeId(0)], 10, &mut rng).unwrap();
        assert_eq!(out, vec![NodeId(0)]);
        // reachable once the deadline allows it
        let out = simulate_trial(&g, &[NodeId(0)], 11, &mut rng).unwrap();
        assert_eq!(out, vec![NodeId(0), NodeId(1)]);
    }

    #[test]
    fn absent_edges_are_never_used() {
        let g = Graph::from_edges(3, &[(0, 1, 1.0)]).unwrap();
        for i in 0..20 {
            let out = simulate_trial(&g, &[NodeId(0)], 10, &mut trial_stream(3, i)).unwrap();
            assert_eq!(out, vec![NodeId(0), NodeId(1)]);
        }
    }

    #[test]
    fn earliest_arrival_wins() {
        // 0 -> 2 lands at 5; 0 -> 1 -> 2 lands at 2.
        let mut g = Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        g.set_edge_delay(NodeId(0), NodeId(2), DelayDistribution::point(5).unwrap())
            .unwrap();
        let mut sim = Simulator::new(&g);
        sim.run(&[NodeId(0)], 10, &mut trial_stream(0, 0));
        assert_eq!(sim.statuses()[2], NodeStatus::Influenced(2));
        // with deadline 1 node 2 is only pending when the trial stops
        sim.run(&[NodeId(0)], 1, &mut trial_stream(0, 0));
        assert_eq!(sim.influenced(), vec![NodeId(0), NodeId(1)]);
    }

    #[test]
    fn threshold_blocks_weak_edges() {
        let mut g = path(0.5, DelayDistribution::immediate());
        g.set_node_attr(NodeId(1), crate::graph::NodeAttr { threshold: 0.6, cost: 1 })
            .unwrap();
        for i in 0..50 {
            let out = simulate_trial(&g, &[NodeId(0)], 10, &mut trial_stream(9, i)).unwrap();
            assert_eq!(out.len(), 1);
        }
    }

    #[test]
    fn zero_deadline_keeps_only_seeds() {
        let g = path(1.0, DelayDistribution::immediate());
        let out = simulate_trial(&g, &[NodeId(0)], 0, &mut trial_stream(0, 0)).unwrap();
        assert_eq!(out, vec![NodeId(0)]);
    }

    #[test]
    fn rejects_bad_seeds() {
        let g = path(1.0, DelayDistribution::immediate());
        let mut rng = trial_stream(0, 0);
        assert!(matches!(
            simulate_trial(&g, &[], 3, &mut rng),
            Err(Error::EmptySeedSet)
        ));
        assert!(matches!(
            simulate_trial(&g, &[NodeId(5)], 3, &mut rng),
            Err(Error::InvalidNode { .. })
        ));
    }
}
