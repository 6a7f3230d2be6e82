//! Budgeted influence maximization under the latency-aware independent
//! cascade model with a diffusion deadline.
//!
//! * [`graph`]: loading, validation and annotation of the social graph.
//! * [`diffusion`]: trial simulation, Monte-Carlo spread estimation and an
//!   exact enumeration oracle for tiny graphs.
//! * [`selection`]: the greedy selectors and the baseline heuristics.
//! * [`harness`]: budget sweeps and CSV output.

pub mod diffusion;
pub mod error;
pub mod graph;
pub mod harness;
pub mod rng;
pub mod selection;
pub mod synth;

pub use diffusion::{estimate_spread, exact_spread, simulate_trial, SimulationParams, SpreadEstimate};
pub use error::{Error, Result};
pub use graph::{DelayDistribution, EdgeAttr, Graph, GraphBuilder, NodeAttr, NodeId, ProbabilitySetting};
pub use harness::{ExperimentConfig, SweepResult};
pub use selection::{Algorithm, GainMode, SeedSet, SelectionReport};
