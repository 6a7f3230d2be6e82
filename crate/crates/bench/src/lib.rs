//! Shared fixtures for the criterion benches.

use tbim::graph::{
    assign_costs, assign_delay_distributions, assign_probabilities, assign_thresholds, ProbabilitySetting,
    ThresholdMode,
};
use tbim::synth::random_graph;
use tbim::Graph;

/// Random graph annotated the way the experiments do it.
pub fn fixture(n: usize, m: usize, seed: u64) -> Graph {
    let g = random_graph(n, m, 0.1, seed);
    let g = assign_probabilities(g, ProbabilitySetting::Uniform(0.1), seed + 1).unwrap();
    let g = assign_costs(g, 50, 100, seed + 2).unwrap();
    let g = assign_delay_distributions(g, 1, 20, 10, seed + 3).unwrap();
    assign_thresholds(g, ThresholdMode::FixedZero)
}
