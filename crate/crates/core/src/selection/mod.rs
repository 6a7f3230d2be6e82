//! Budgeted seed selection: the greedy family (eager, lazy, look-ahead lazy)
//! and the degree / rank heuristics.

mod approx;
mod celfpp;
mod heuristics;
mod irie;
mod lazy;
mod naive;
mod oracle;
mod reach;
mod seed_file;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::diffusion::SimulationParams;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub use approx::greedy_approx;
pub use celfpp::celf_pp;
pub use heuristics::{baseline_ddh, baseline_deg, baseline_sdh, degree_discount};
pub use irie::{baseline_irie, influence_ranks, IRIE_DEFAULT_ALPHA, IRIE_DEFAULT_ITERATIONS};
pub use lazy::{lazy_greedy, lazy_greedy_with};
pub use naive::{greedy_naive, greedy_naive_with, NAIVE_FEASIBILITY_LIMIT};
pub use oracle::{single_node_spreads, ExactOracle, MonteCarloOracle, SpreadOracle, SubsetTable};
pub use reach::{approx_marginal_gain, SeedReach};
pub use seed_file::{read_seed_file, write_seed_file};

/// Selected nodes in selection order, with their total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    nodes: Vec<NodeId>,
    member: Vec<bool>,
    total_cost: u64,
    budget: u64,
}

impl SeedSet {
    pub fn new(g: &Graph, budget: u64) -> Self {
        SeedSet {
            nodes: Vec::new(),
            member: vec![false; g.node_count()],
            total_cost: 0,
            budget,
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_cost(&self) -> u64 {
        self.total_cost
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.total_cost
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.member[v.index()]
    }

    /// `v` is not selected and fits in the remaining budget.
    pub fn can_add(&self, g: &Graph, v: NodeId) -> bool {
        !self.member[v.index()] && g.cost(v) <= self.remaining()
    }

    pub(crate) fn push(&mut self, g: &Graph, v: NodeId) {
        debug_assert!(self.can_add(g, v));
        self.member[v.index()] = true;
        self.nodes.push(v);
        self.total_cost += g.cost(v);
    }

    /// No unselected node fits in the remaining budget.
    pub fn is_maximal(&self, g: &Graph) -> bool {
        g.nodes().all(|v| !self.can_add(g, v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub seed_set: SeedSet,
    /// Calls to the spread estimator (or oracle).
    pub spread_evaluations: u64,
    /// Marginal-gain computations: oracle differences for the simulation
    /// variants, approximate-gain passes for the others.
    pub gain_evaluations: u64,
    pub wall_time: Duration,
}

impl SelectionReport {
    fn heuristic(seed_set: SeedSet, started: Instant) -> Self {
        SelectionReport {
            seed_set,
            spread_evaluations: 0,
            gain_evaluations: 0,
            wall_time: started.elapsed(),
        }
    }
}

/// How lazy greedy recomputes a stale marginal gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainMode {
    /// Difference of two spread estimates.
    Simulation,
    /// The neighbourhood approximation of [`approx_marginal_gain`].
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Naive,
    Approx,
    LazySim,
    LazyApprox,
    CelfPp,
    Deg,
    Ddh,
    Sdh,
    Irie,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Naive,
        Algorithm::Approx,
        Algorithm::LazySim,
        Algorithm::LazyApprox,
        Algorithm::CelfPp,
        Algorithm::Deg,
        Algorithm::Ddh,
        Algorithm::Sdh,
        Algorithm::Irie,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Approx => "approx",
            Algorithm::LazySim => "lazy-sim",
            Algorithm::LazyApprox => "lazy-approx",
            Algorithm::CelfPp => "celfpp",
            Algorithm::Deg => "deg",
            Algorithm::Ddh => "ddh",
            Algorithm::Sdh => "sdh",
            Algorithm::Irie => "irie",
        }
    }

    /// The marginal-gain greedy family, as opposed to the heuristics.
    pub fn is_greedy(self) -> bool {
        matches!(
            self,
            Algorithm::Naive
                | Algorithm::Approx
                | Algorithm::LazySim
                | Algorithm::LazyApprox
                | Algorithm::CelfPp
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectOptions {
    pub params: SimulationParams,
    pub irie_alpha: f64,
    pub irie_iterations: u32,
}

impl SelectOptions {
    pub fn new(params: SimulationParams) -> Self {
        SelectOptions {
            params,
            irie_alpha: IRIE_DEFAULT_ALPHA,
            irie_iterations: IRIE_DEFAULT_ITERATIONS,
        }
    }
}

/// Runs one algorithm by name.
pub fn select(g: &Graph, algorithm: Algorithm, budget: u64, opts: &SelectOptions) -> Result<SelectionReport> {
    let started = Instant::now();
    let params = &opts.params;
    match algorithm {
        Algorithm::Naive => greedy_naive(g, budget, params),
        Algorithm::Approx => greedy_approx(g, budget, params),
        Algorithm::LazySim => lazy_greedy(g, budget, params, GainMode::Simulation),
        Algorithm::LazyApprox => lazy_greedy(g, budget, params, GainMode::Approx),
        Algorithm::CelfPp => celf_pp(g, budget, params),
        Algorithm::Deg => Ok(SelectionReport::heuristic(baseline_deg(g, budget), started)),
        Algorithm::Ddh => Ok(SelectionReport::heuristic(baseline_ddh(g, budget), started)),
        Algorithm::Sdh => Ok(SelectionReport::heuristic(baseline_sdh(g, budget), started)),
        Algorithm::Irie => baseline_irie(g, budget, opts.irie_alpha, opts.irie_iterations)
            .map(|s| SelectionReport::heuristic(s, started)),
    }
}

/// A scored candidate; higher score first, lower id on ties.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scored {
    pub score: f64,
    pub node: NodeId,
}

impl Scored {
    pub fn beats(&self, other: &Scored) -> bool {
        self.cmp(other) == Ordering::Greater
    }
}

impl PartialEq for Scored {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Scored {}

impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scored {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .partial_cmp(&other.score)
            .expect("scores are never NaN")
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Best affordable unselected node under `score`, if any.
pub(crate) fn best_candidate<F: FnMut(NodeId) -> f64>(
    g: &Graph,
    set: &SeedSet,
    mut score: F,
) -> Option<Scored> {
    let mut best: Option<Scored> = None;
    for v in g.nodes() {
        if !set.can_add(g, v) {
            continue;
        }
        let cand = Scored { score: score(v), node: v };
        if best.is_none_or(|b| cand.beats(&b)) {
            best = Some(cand);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scored_orders_by_score_then_lower_id() {
        let a = Scored { score: 1.0, node: NodeId(3) };
        let b = Scored { score: 1.0, node: NodeId(1) };
        let c = Scored { score: 2.0, node: NodeId(9) };
        assert!(b.beats(&a));
        assert!(c.beats(&b));
        let mut heap = std::collections::BinaryHeap::from(vec![a, b, c]);
        assert_eq!(heap.pop().unwrap().node, NodeId(9));
        assert_eq!(heap.pop().unwrap().node, NodeId(1));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!(matches!("celf".parse::<Algorithm>(), Err(Error::UnknownAlgorithm(_))));
    }

    #[test]
    fn seed_set_budget_accounting() {
        let g = Graph::from_edges(3, &[]).unwrap().with_costs(&[5, 7, 3]).unwrap();
        let mut s = SeedSet::new(&g, 10);
        assert!(s.can_add(&g, NodeId(1)));
        s.push(&g, NodeId(1));
        assert_eq!(s.remaining(), 3);
        assert!(!s.can_add(&g, NodeId(0)));
        assert!(!s.can_add(&g, NodeId(1)));
        assert!(s.can_add(&g, NodeId(2)));
        s.push(&g, NodeId(2));
        assert!(s.is_maximal(&g));
        assert_eq!(s.total_cost(), 10);
    }
}
