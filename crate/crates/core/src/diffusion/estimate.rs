use std::io::Write;

use rayon::prelude::*;

use super::simulate::{validate_seeds, Simulator};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::trial_stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationParams {
    /// Latest time step at which an activation still counts.
    pub deadline: u32,
    pub trials: u32,
    pub master_seed: u64,
}

impl SimulationParams {
    pub fn new(deadline: u32, trials: u32, master_seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("trial count must be at least 1".into()));
        }
        Ok(SimulationParams {
            deadline,
            trials,
            master_seed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadEstimate {
    pub mean: f64,
    pub trials: u32,
    pub sample_stddev: f64,
}

impl SpreadEstimate {
    pub fn std_error(&self) -> f64 {
        self.sample_stddev / f64::from(self.trials).sqrt()
    }

    /// Builds the estimate from exact integer moments so the result does not
    /// depend on summation order.
    fn from_moments(trials: u32, sum: u64, sum_sq: u128) -> Self {
        let r = u128::from(trials);
        let mean = sum as f64 / trials as f64;
        let sample_stddev = if trials > 1 {
            let s = u128::from(sum);
            let numer = r * sum_sq - s * s;
            (numer as f64 / (r * (r - 1)) as f64).sqrt()
        } else {
            0.0
        };
        SpreadEstimate {
            mean,
            trials,
            sample_stddev,
        }
    }
}

/// Monte-Carlo estimate of the expected number of nodes influenced by the
/// deadline. Trial `i` draws from stream `i` of `master_seed`, so the result
/// is identical for any thread count.
pub fn estimate_spread(g: &Graph, seeds: &[NodeId], params: &SimulationParams) -> Result<SpreadEstimate> {
    validate_seeds(g, seeds)?;
    if params.trials == 0 {
        return Err(Error::InvalidParameter("trial count must be at least 1".into()));
    }
    let (sum, sum_sq) = (0..params.trials)
        .into_par_iter()
        .map_init(
            || Simulator::new(g),
            |sim, i| {
                let mut rng = trial_stream(params.master_seed, u64::from(i));
                sim.run(seeds, params.deadline, &mut rng) as u64
            },
        )
        .fold(
            || (0u64, 0u128),
            |(s, q), c| (s + c, q + u128::from(c) * u128::from(c)),
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(SpreadEstimate::from_moments(params.trials, sum, sum_sq))
}

/// Writes `trial_id: id,id,...` for every trial, using the same streams as
/// [`estimate_spread`].
pub fn dump_trials<W: Write>(
    g: &Graph,
    seeds: &[NodeId],
    params: &SimulationParams,
    out: &mut W,
) -> Result<()> {
    validate_seeds(g, seeds)?;
    let mut sim = Simulator::new(g);
    let io = |e| Error::io("<trial dump>", e);
    for i in 0..params.trials {
        let mut rng = trial_stream(params.master_seed, u64::from(i));
        sim.run(seeds, params.deadline, &mut rng);
        let ids: Vec<String> = sim.influenced().iter().map(|v| v.to_string()).collect();
        writeln!(out, "{i}: {}", ids.join(",")).map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(trials: u32) -> SimulationParams {
        SimulationParams::new(10, trials, 42).unwrap()
    }

    #[test]
    fn isolated_seed() {
        let g = Graph::from_edges(3, &[(1, 2, 0.5)]).unwrap();
        let est = estimate_spread(&g, &[NodeId(0)], &params(500)).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.sample_stddev, 0.0);
        assert_eq!(est.trials, 500);
    }

    #[test]
    fn star_mean_is_two() {
        let g = Graph::from_edges(3, &[(0, 1, 0.5), (0, 2, 0.5)]).unwrap();
        let est = estimate_spread(&g, &[NodeId(0)], &params(100_000)).unwrap();
        // exact 1 + 2 * 0.5; sd of one trial is sqrt(0.5) so 3 SE ~ 0.0067
        assert!((est.mean - 2.0).abs() <= 0.02, "{}", est.mean);
        assert!((est.sample_stddev - 0.5f64.sqrt()).abs() < 0.01);
    }

    #[test]
    fn all_seeded() {
        let g = crate::synth::random_graph(20, 60, 0.3, 2);
        let seeds: Vec<NodeId> = g.nodes().collect();
        let est = estimate_spread(&g, &seeds, &params(200)).unwrap();
        assert_eq!(est.mean, 20.0);
        assert_eq!(est.sample_stddev, 0.0);
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let g = crate::synth::random_graph(200, 1500, 0.1, 9);
        let seeds = [NodeId(3), NodeId(77)];
        let p = params(3000);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_spread(&g, &seeds, &p).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.sample_stddev.to_bits(), b.sample_stddev.to_bits());
    }

    #[test]
    fn dump_matches_estimate() {
        let g = Graph::from_edges(3, &[(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        let p = params(50);
        let mut buf = Vec::new();
        dump_trials(&g, &[NodeId(0)], &p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let total: usize = text
            .lines()
            .map(|l| l.split_once(": ").unwrap().1.split(',').count())
            .sum();
        let est = estimate_spread(&g, &[NodeId(0)], &p).unwrap();
        assert_eq!(total as f64 / 50.0, est.mean);
        assert!(text.starts_with("0: 0"));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(SimulationParams::new(10, 0, 1).is_err());
    }
}
