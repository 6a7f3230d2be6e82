use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{ExperimentConfig, GraphFormat};
use super::SweepResult;
use crate::diffusion::{estimate_spread, SimulationParams};
use crate::error::{Error, Result};
use crate::graph::{
    assign_costs, assign_delay_distributions, assign_probabilities, assign_thresholds, load_edge_list,
    read_annotated, Graph,
};
use crate::rng::derive_seed;
use crate::selection::{select, write_seed_file, Algorithm, SelectOptions};

/// Stream tags for the seeds derived from `master_seed`.
const TAG_PROBABILITY: u64 = 1;
const TAG_COST: u64 = 2;
const TAG_DELAY: u64 = 3;
const TAG_THRESHOLD: u64 = 4;
const TAG_SELECTION: u64 = 5;
const TAG_EVALUATION: u64 = 6;

/// Rows of one sweep plus the size of the graph they were run on.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub node_count: usize,
    pub results: Vec<SweepResult>,
}

/// Loads and annotates the configured graph. Every attribute stream is
/// derived from `master_seed`, so the instance is a function of the config.
pub fn prepare_graph(cfg: &ExperimentConfig) -> Result<Graph> {
    let g = match cfg.graph_format {
        GraphFormat::Annotated => read_annotated(&cfg.graph_path)?,
        GraphFormat::Edges => {
            let seed = |tag| derive_seed(cfg.master_seed, tag);
            let g = load_edge_list(&cfg.graph_path, cfg.directed)?;
            let g = assign_probabilities(g, cfg.probability, seed(TAG_PROBABILITY))?;
            let g = assign_costs(g, cfg.cost_range.0, cfg.cost_range.1, seed(TAG_COST))?;
            let g = match cfg.delay {
                Some(d) => assign_delay_distributions(g, d.lambda_min, d.lambda_max, d.max_offset, seed(TAG_DELAY))?,
                None => g,
            };
            assign_thresholds(g, cfg.threshold_mode(seed(TAG_THRESHOLD)))
        }
    };
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g)
}

/// Runs every (algorithm, budget) cell on one shared instance and writes the
/// seed files beside `cfg.output`.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Sweep> {
    let g = prepare_graph(cfg)?;
    let results = run_cells(&g, cfg)?;
    Ok(Sweep {
        node_count: g.node_count(),
        results,
    })
}

/// The sweep over an already prepared graph.
pub fn run_cells(g: &Graph, cfg: &ExperimentConfig) -> Result<Vec<SweepResult>> {
    let mut opts = SelectOptions::new(SimulationParams::new(
        cfg.deadline,
        cfg.selection_trials,
        derive_seed(cfg.master_seed, TAG_SELECTION),
    )?);
    opts.irie_alpha = cfg.irie_alpha;
    opts.irie_iterations = cfg.irie_iterations;
    let eval = SimulationParams::new(
        cfg.deadline,
        cfg.evaluation_trials,
        derive_seed(cfg.master_seed, TAG_EVALUATION),
    )?;
    let out_dir = cfg.output.parent().unwrap_or(Path::new("")).to_path_buf();
    if !out_dir.as_os_str().is_empty() {
        std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    }
    let cells: Vec<(Algorithm, u64)> = cfg
        .algorithms
        .iter()
        .flat_map(|&a| cfg.budgets.iter().map(move |&b| (a, b)))
        .collect();
    let run = |&(algorithm, budget): &(Algorithm, u64)| {
        run_cell(g, cfg, &opts, &eval, &out_dir, algorithm, budget)
    };
    if cfg.parallel {
        cells.par_iter().map(run).collect()
    } else {
        cells.iter().map(run).collect()
    }
}

fn run_cell(
    g: &Graph,
    cfg: &ExperimentConfig,
    opts: &SelectOptions,
    eval: &SimulationParams,
    out_dir: &Path,
    algorithm: Algorithm,
    budget: u64,
) -> Result<SweepResult> {
    let report = select(g, algorithm, budget, opts)?;
    let seeds = report.seed_set.nodes();
    let (mean, stddev) = if seeds.is_empty() {
        (0.0, 0.0)
    } else {
        let est = estimate_spread(g, seeds, eval)?;
        (est.mean, est.sample_stddev)
    };
    let file_name = PathBuf::from(format!("{}-{}-{}.seeds", cfg.dataset, algorithm, budget));
    write_seed_file(g, &report.seed_set, out_dir.join(&file_name))?;
    log::info!(
        "{} {algorithm} B={budget}: {} seeds, spread {mean:.2}, {:.3}s",
        cfg.dataset,
        seeds.len(),
        report.wall_time.as_secs_f64()
    );
    Ok(SweepResult {
        dataset: cfg.dataset.clone(),
        algorithm,
        budget,
        spread_mean: mean,
        spread_stddev: stddev,
        selection_seconds: if cfg.timed { report.wall_time.as_secs_f64() } else { 0.0 },
        evaluation_trials: eval.trials,
        seed_set_path: file_name,
    })
}
