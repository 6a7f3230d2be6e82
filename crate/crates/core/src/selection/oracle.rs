use std::cell::Cell;

use crate::diffusion::{estimate_spread, exact_spread, seed_mask, SimulationParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Source of expected-spread values for non-empty seed sets.
pub trait SpreadOracle {
    fn spread(&self, seeds: &[NodeId]) -> Result<f64>;
}

/// Monte-Carlo estimates with fixed parameters.
pub struct MonteCarloOracle<'g> {
    pub graph: &'g Graph,
    pub params: SimulationParams,
}

impl SpreadOracle for MonteCarloOracle<'_> {
    fn spread(&self, seeds: &[NodeId]) -> Result<f64> {
        estimate_spread(self.graph, seeds, &self.params).map(|e| e.mean)
    }
}

/// Exact enumeration; tiny graphs only.
pub struct ExactOracle<'g> {
    pub graph: &'g Graph,
    pub deadline: u32,
}

impl SpreadOracle for ExactOracle<'_> {
    fn spread(&self, seeds: &[NodeId]) -> Result<f64> {
        exact_spread(self.graph, seeds, self.deadline)
    }
}

/// Precomputed spread for every subset, indexed by node bitmask. Counts
/// lookups so tests can compare evaluation counts.
pub struct SubsetTable {
    values: Vec<f64>,
    lookups: Cell<u64>,
}

impl SubsetTable {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::InvalidParameter(
                "subset table length must be a power of two".into(),
            ));
        }
        Ok(SubsetTable {
            values,
            lookups: Cell::new(0),
        })
    }

    pub fn lookups(&self) -> u64 {
        self.lookups.get()
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.values[mask]
    }
}

impl SpreadOracle for SubsetTable {
    fn spread(&self, seeds: &[NodeId]) -> Result<f64> {
        let mask = seed_mask(seeds);
        let value = self.values.get(mask).copied().ok_or(Error::InvalidNode {
            id: seeds.iter().map(|s| s.index()).max().unwrap_or(0),
            n: self.values.len().trailing_zeros() as usize,
        })?;
        self.lookups.set(self.lookups.get() + 1);
        Ok(value)
    }
}

/// Spread of every single node, one oracle call each.
pub fn single_node_spreads<O: SpreadOracle + ?Sized>(g: &Graph, oracle: &O) -> Result<Vec<f64>> {
    g.nodes().map(|u| oracle.spread(&[u])).collect()
}
