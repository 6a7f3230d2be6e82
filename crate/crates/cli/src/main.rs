use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use tbim::diffusion::{dump_trials, estimate_spread};
use tbim::graph::{graph_stats, load_edge_list, read_annotated, write_annotated, Graph};
use tbim::harness::{
    compare_report, emit_csv, parse_delay, parse_range, prepare_graph, run_sweep, ExperimentConfig, ThresholdSetting,
};
use tbim::selection::{read_seed_file, select, write_seed_file, Algorithm, SelectOptions};
use tbim::{Error, SimulationParams};

#[derive(Parser)]
#[command(name = "tbim", version, about = "Budgeted influence maximization with a diffusion deadline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Annotate an edge list with probabilities, costs, delays and thresholds.
    Prepare(PrepareArgs),
    /// Select a seed set on an annotated graph.
    Select(SelectArgs),
    /// Estimate the spread of a seed set.
    Evaluate(EvaluateArgs),
    /// Run a budget sweep from a config file.
    Sweep(SweepArgs),
    /// Print node and edge counts and degrees.
    Stats(StatsArgs),
}

#[derive(Args)]
struct PrepareArgs {
    #[arg(long)]
    edges: PathBuf,
    /// Treat every line as an undirected pair.
    #[arg(long)]
    undirected: bool,
    /// uniform:<p>, trivalency or file.
    #[arg(long, default_value = "uniform:0.1")]
    prob: String,
    /// lo:hi, inclusive.
    #[arg(long, default_value = "50:100")]
    costs: String,
    /// poisson:<min>:<max>:<offsets> or none.
    #[arg(long, default_value = "poisson:1:20:10")]
    delay: String,
    /// zero or uniform.
    #[arg(long, default_value = "zero")]
    thresholds: String,
    /// Deadline the file is meant for; only recorded in the header.
    #[arg(long = "T-note")]
    t_note: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimArgs {
    /// Diffusion deadline.
    #[arg(long = "T", default_value_t = 10)]
    deadline: u32,
    /// Monte-Carlo trials.
    #[arg(long = "R", default_value_t = 10000)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SelectArgs {
    /// Annotated graph.
    #[arg(long)]
    graph: PathBuf,
    /// naive, approx, lazy-sim, lazy-approx, celfpp, deg, ddh, sdh or irie.
    #[arg(long, value_parser = parse_algorithm)]
    algo: Algorithm,
    #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(0..))]
    budget: i64,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long)]
    out: PathBuf,
    /// IRIE damping factor.
    #[arg(long, default_value_t = tbim::selection::IRIE_DEFAULT_ALPHA)]
    alpha: f64,
    /// IRIE rank iterations.
    #[arg(long, default_value_t = tbim::selection::IRIE_DEFAULT_ITERATIONS)]
    iterations: u32,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seeds: PathBuf,
    #[command(flatten)]
    sim: SimArgs,
    /// Also write every trial's influenced node ids here.
    #[arg(long)]
    dump_trials: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StatsSource {
    /// Plain edge list.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Annotated graph.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    source: StatsSource,
    #[arg(long)]
    undirected: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Prepare(a) => prepare(a),
        Command::Select(a) => select_cmd(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Sweep(a) => sweep(a),
        Command::Stats(a) => stats(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn set_threads(threads: Option<usize>) -> Result<()> {
    if let Some(t) = threads {
        if t == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn print_stats(g: &Graph) -> Result<()> {
    let s = graph_stats(g)?;
    println!("n {}", s.n);
    println!("m {}", s.m);
    println!("avg_degree {:.3}", s.avg_degree);
    println!("max_out_degree {}", s.max_out_degree);
    Ok(())
}

fn prepare(a: PrepareArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::new(&a.edges);
    cfg.directed = !a.undirected;
    cfg.probability = a.prob.parse()?;
    cfg.cost_range = parse_range(&a.costs).map_err(|m| Error::InvalidParameter(format!("--costs: {m}")))?;
    cfg.delay = parse_delay(&a.delay).map_err(|m| Error::InvalidParameter(format!("--delay: {m}")))?;
    cfg.thresholds = match a.thresholds.as_str() {
        "zero" => ThresholdSetting::Zero,
        "uniform" => ThresholdSetting::Uniform,
        other => bail!("--thresholds: {other:?} is not zero or uniform"),
    };
    cfg.master_seed = a.seed;
    let g = prepare_graph(&cfg)?;
    let mut comments = vec![
        format!("source {}", file_name(&a.edges)),
        format!("prob {} costs {} delay {} thresholds {}", cfg.probability, a.costs, a.delay, a.thresholds),
        format!("seed {}", a.seed),
    ];
    if let Some(t) = a.t_note {
        comments.push(format!("deadline {t}"));
    }
    write_annotated(&g, &a.out, &comments)?;
    print_stats(&g)
}

fn file_name(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn select_cmd(a: SelectArgs) -> Result<()> {
    set_threads(a.sim.threads)?;
    let algorithm = a.algo;
    let g = read_annotated(&a.graph)?;
    let params = SimulationParams::new(a.sim.deadline, a.sim.trials, a.sim.seed)?;
    let mut opts = SelectOptions::new(params);
    opts.irie_alpha = a.alpha;
    opts.irie_iterations = a.iterations;
    let report = select(&g, algorithm, a.budget as u64, &opts)?;
    write_seed_file(&g, &report.seed_set, &a.out)?;
    println!("nodes {}", report.seed_set.len());
    println!("total_cost {}", report.seed_set.total_cost());
    println!("selection_seconds {:.3}", report.wall_time.as_secs_f64());
    Ok(())
}

fn evaluate(a: EvaluateArgs) -> Result<()> {
    set_threads(a.sim.threads)?;
    let g = read_annotated(&a.graph)?;
    let seeds = read_seed_file(&g, &a.seeds)?;
    let params = SimulationParams::new(a.sim.deadline, a.sim.trials, a.sim.seed)?;
    let est = estimate_spread(&g, &seeds, &params)?;
    if let Some(path) = &a.dump_trials {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        dump_trials(&g, &seeds, &params, &mut w)?;
        w.flush().with_context(|| format!("writing {}", path.display()))?;
    }
    println!("mean {:.4}", est.mean);
    println!("stddev {:.4}", est.sample_stddev);
    println!("trials {}", est.trials);
    Ok(())
}

fn sweep(a: SweepArgs) -> Result<()> {
    set_threads(a.threads)?;
    let cfg = ExperimentConfig::load(&a.config)?;
    let sweep = run_sweep(&cfg)?;
    emit_csv(&sweep.results, &cfg.output)?;
    match compare_report(&sweep.results, sweep.node_count) {
        Ok(text) => {
            let path = cfg.output.with_extension("report.txt");
            std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            print!("{text}");
        }
        Err(Error::NoSharedBudgets) => eprintln!("single algorithm per budget; no comparison report"),
        Err(e) => return Err(e.into()),
    }
    println!("wrote {} rows to {}", sweep.results.len(), cfg.output.display());
    Ok(())
}

fn stats(a: StatsArgs) -> Result<()> {
    let g = match (a.source.edges, a.source.graph) {
        (Some(p), _) => load_edge_list(p, !a.undirected)?,
        (_, Some(p)) => read_annotated(p)?,
        _ => unreachable!("clap enforces one source"),
    };
    print_stats(&g)
}
