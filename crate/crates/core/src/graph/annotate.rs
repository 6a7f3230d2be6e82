//! Attribute assignment for the experimental settings. Every function is a pure
//! function of its inputs and `rng_seed`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{DelayDistribution, Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng::seeded;

pub const TRIVALENCY_VALUES: [f64; 3] = [0.1, 0.01, 0.001];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilitySetting {
    Uniform(f64),
    Trivalency,
    FromFile,
}

impl FromStr for ProbabilitySetting {
    type Err = Error;

    /// `uniform:<p>`, `trivalency` or `file`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(':') {
            Some(("uniform", p)) => {
                let p: f64 = p.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad uniform probability {p:?}"))
                })?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "uniform probability {p} outside (0, 1]"
                    )));
                }
                Ok(ProbabilitySetting::Uniform(p))
            }
            None if s == "trivalency" => Ok(ProbabilitySetting::Trivalency),
            None if s == "file" => Ok(ProbabilitySetting::FromFile),
            _ => Err(Error::InvalidParameter(format!(
                "probability setting {s:?} is not uniform:<p>, trivalency or file"
            ))),
        }
    }
}

impl fmt::Display for ProbabilitySetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbabilitySetting::Uniform(p) => write!(f, "uniform:{p}"),
            ProbabilitySetting::Trivalency => f.write_str("trivalency"),
            ProbabilitySetting::FromFile => f.write_str("file"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    FixedZero,
    UniformRandom(u64),
}

pub fn assign_probabilities(
    mut g: Graph,
    setting: ProbabilitySetting,
    rng_seed: u64,
) -> Result<Graph> {
    match setting {
        ProbabilitySetting::Uniform(p) => {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "uniform probability {p} outside (0, 1]"
                )));
            }
            g.edge_attrs_mut().iter_mut().for_each(|a| a.prob = p);
        }
        ProbabilitySetting::Trivalency => {
            let mut rng = seeded(rng_seed);
            for a in g.edge_attrs_mut() {
                a.prob = TRIVALENCY_VALUES[rng.random_range(0..TRIVALENCY_VALUES.len())];
            }
        }
        ProbabilitySetting::FromFile => {
            if !g.probabilities_loaded() {
                let (u, v, _) = g
                    .edges()
                    .next()
                    .ok_or(Error::InvalidParameter("graph has no edges".into()))?;
                return Err(Error::MissingProbability {
                    src: g.label(u).to_owned(),
                    dst: g.label(v).to_owned(),
                });
            }
            return Ok(g);
        }
    }
    g.set_probabilities_loaded(false);
    Ok(g)
}

/// Draws every node's cost uniformly from the integers in `[lo, hi]`.
pub fn assign_costs(mut g: Graph, lo: u64, hi: u64, rng_seed: u64) -> Result<Graph> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidParameter(format!(
            "cost range [{lo}, {hi}] must satisfy 1 <= lo <= hi"
        )));
    }
    let mut rng = seeded(rng_seed);
    for a in g.node_attrs_mut() {
        a.cost = rng.random_range(lo..=hi);
    }
    Ok(g)
}

/// Gives each node a Poisson rate drawn uniformly from the integers in
/// `[lambda_min, lambda_max]`; all out-edges of the node share the resulting
/// truncated, shifted distribution over offsets `1..=max_offset`.
pub fn assign_delay_distributions(
    mut g: Graph,
    lambda_min: u32,
    lambda_max: u32,
    max_offset: usize,
    rng_seed: u64,
) -> Result<Graph> {
    if lambda_min < 1 || lambda_min > lambda_max {
        return Err(Error::InvalidParameter(format!(
            "poisson rate range [{lambda_min}, {lambda_max}] must satisfy 1 <= min <= max"
        )));
    }
    if max_offset < 1 {
        return Err(Error::InvalidParameter("max_offset must be at least 1".into()));
    }
    let mut rng = seeded(rng_seed);
    let rates: Vec<u32> = (0..g.node_count())
        .map(|_| rng.random_range(lambda_min..=lambda_max))
        .collect();
    let mut cache: Vec<Option<DelayDistribution>> = vec![None; lambda_max as usize + 1];
    for (u, &rate) in rates.iter().enumerate() {
        let dist = match &cache[rate as usize] {
            Some(d) => d.clone(),
            None => {
                let d = DelayDistribution::truncated_poisson(f64::from(rate), max_offset)?;
                cache[rate as usize] = Some(d.clone());
                d
            }
        };
        let range = g.out_range(NodeId::from(u));
        for a in &mut g.edge_attrs_mut()[range] {
            a.delay = dist.clone();
        }
    }
    Ok(g)
}

pub fn assign_thresholds(mut g: Graph, mode: ThresholdMode) -> Graph {
    match mode {
        ThresholdMode::FixedZero => g.node_attrs_mut().iter_mut().for_each(|a| a.threshold = 0.0),
        ThresholdMode::UniformRandom(seed) => {
            let mut rng = seeded(seed);
            for a in g.node_attrs_mut() {
                a.threshold = rng.random::<f64>();
            }
        }
    }
    g
}
