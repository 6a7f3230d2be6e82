use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{ProbabilitySetting, ThresholdMode};
use crate::selection::{Algorithm, IRIE_DEFAULT_ALPHA, IRIE_DEFAULT_ITERATIONS};

/// How the graph file is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// Edge list, annotated by the sweep.
    Edges,
    /// Annotated-graph file, used as is.
    Annotated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelaySetting {
    pub lambda_min: u32,
    pub lambda_max: u32,
    pub max_offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSetting {
    Zero,
    Uniform,
}

/// Sweep configuration, read from `key = value` lines.
///
/// | key | default |
/// |---|---|
/// | `graph` | required; relative paths resolve against the config file |
/// | `graph_format` | `edges` (or `annotated`) |
/// | `directed` | `true` |
/// | `dataset` | file stem of `graph` |
/// | `probability` | `uniform:0.1` (`trivalency`, `file`) |
/// | `costs` | `50:100` |
/// | `budgets` | `2000:16000:2000` (`start:end:step` or a comma list) |
/// | `deadline` | `10` |
/// | `delay` | `poisson:1:20:10` (`poisson:min:max:offsets` or `none`) |
/// | `thresholds` | `zero` (or `uniform`) |
/// | `selection_trials` | `1000` |
/// | `evaluation_trials` | `10000` |
/// | `algorithms` | every algorithm except `naive` |
/// | `master_seed` | `0` |
/// | `output` | `results.csv` |
/// | `timing` | `wall` (or `off`, which writes 0 seconds) |
/// | `parallel` | `false`; `true` runs cells concurrently and implies `timing = off` |
/// | `irie_alpha`, `irie_iterations` | `0.7`, `20` |
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph_path: PathBuf,
    pub graph_format: GraphFormat,
    pub directed: bool,
    pub dataset: String,
    pub probability: ProbabilitySetting,
    pub cost_range: (u64, u64),
    pub budgets: Vec<u64>,
    pub deadline: u32,
    pub delay: Option<DelaySetting>,
    pub thresholds: ThresholdSetting,
    pub selection_trials: u32,
    pub evaluation_trials: u32,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    pub output: PathBuf,
    pub timed: bool,
    pub parallel: bool,
    pub irie_alpha: f64,
    pub irie_iterations: u32,
}

impl ExperimentConfig {
    /// Defaults for everything but the graph path.
    pub fn new(graph_path: impl Into<PathBuf>) -> Self {
        let graph_path = graph_path.into();
        ExperimentConfig {
            dataset: dataset_name(&graph_path),
            graph_path,
            graph_format: GraphFormat::Edges,
            directed: true,
            probability: ProbabilitySetting::Uniform(0.1),
            cost_range: (50, 100),
            budgets: (1..=8).map(|k| 2000 * k).collect(),
            deadline: 10,
            delay: Some(DelaySetting {
                lambda_min: 1,
                lambda_max: 20,
                max_offset: 10,
            }),
            thresholds: ThresholdSetting::Zero,
            selection_trials: 1000,
            evaluation_trials: 10000,
            algorithms: Algorithm::ALL.into_iter().filter(|&a| a != Algorithm::Naive).collect(),
            master_seed: 0,
            output: PathBuf::from("results.csv"),
            timed: true,
            parallel: false,
            irie_alpha: IRIE_DEFAULT_ALPHA,
            irie_iterations: IRIE_DEFAULT_ITERATIONS,
        }
    }

    pub fn threshold_mode(&self, seed: u64) -> ThresholdMode {
        match self.thresholds {
            ThresholdSetting::Zero => ThresholdMode::FixedZero,
            ThresholdSetting::Uniform => ThresholdMode::UniformRandom(seed),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base)
    }

    /// Parses config text; relative paths are joined onto `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut graph: Option<PathBuf> = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: lineno,
                key: line.to_owned(),
                message: "expected key = value".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "graph" {
                graph = Some(base.join(value));
            } else {
                entries.push((lineno, key, value));
            }
        }
        let graph = graph.ok_or_else(|| Error::Config {
            line: 0,
            key: "graph".into(),
            message: "missing".into(),
        })?;
        let mut cfg = ExperimentConfig::new(graph);
        let mut timing: Option<(usize, bool)> = None;
        for (line, key, value) in entries {
            let bad = |message: String| Error::Config {
                line,
                key: key.to_owned(),
                message,
            };
            match key {
                "graph_format" => {
                    cfg.graph_format = match value {
                        "edges" => GraphFormat::Edges,
                        "annotated" => GraphFormat::Annotated,
                        _ => return Err(bad(format!("{value:?} is not edges or annotated"))),
                    }
                }
                "directed" => cfg.directed = parse_bool(value).map_err(bad)?,
                "dataset" => cfg.dataset = value.to_owned(),
                "probability" => cfg.probability = value.parse().map_err(|e: Error| bad(e.to_string()))?,
                "costs" => cfg.cost_range = parse_range(value).map_err(bad)?,
                "budgets" => cfg.budgets = parse_budgets(value).map_err(bad)?,
                "deadline" => cfg.deadline = parse_num(value).map_err(bad)?,
                "delay" => cfg.delay = parse_delay(value).map_err(bad)?,
                "thresholds" => {
                    cfg.thresholds = match value {
                        "zero" => ThresholdSetting::Zero,
                        "uniform" => ThresholdSetting::Uniform,
                        _ => return Err(bad(format!("{value:?} is not zero or uniform"))),
                    }
                }
                "selection_trials" => cfg.selection_trials = parse_positive(value).map_err(bad)?,
                "evaluation_trials" => cfg.evaluation_trials = parse_positive(value).map_err(bad)?,
                "algorithms" => {
                    cfg.algorithms = split_list(value)
                        .map(|s| s.parse::<Algorithm>())
                        .collect::<Result<_>>()
                        .map_err(|e| bad(e.to_string()))?;
                    if cfg.algorithms.is_empty() {
                        return Err(bad("empty list".into()));
                    }
                }
                "master_seed" => cfg.master_seed = parse_num(value).map_err(bad)?,
                "output" => cfg.output = PathBuf::from(value),
                "timing" => {
                    let on = match value {
                        "wall" => true,
                        "off" => false,
                        _ => return Err(bad(format!("{value:?} is not wall or off"))),
                    };
                    timing = Some((line, on));
                }
                "parallel" => cfg.parallel = parse_bool(value).map_err(bad)?,
                "irie_alpha" => {
                    let a: f64 = parse_num(value).map_err(bad)?;
                    if !(a > 0.0 && a < 1.0) {
                        return Err(bad(format!("{a} outside (0, 1)")));
                    }
                    cfg.irie_alpha = a;
                }
                "irie_iterations" => cfg.irie_iterations = parse_positive(value).map_err(bad)?,
                _ => return Err(bad("unknown key".into())),
            }
        }
        cfg.timed = match timing {
            Some((line, true)) if cfg.parallel => {
                return Err(Error::Config {
                    line,
                    key: "timing".into(),
                    message: "parallel cells cannot be timed".into(),
                })
            }
            Some((_, on)) => on,
            None => !cfg.parallel,
        };
        cfg.output = base.join(&cfg.output);
        Ok(cfg)
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into())
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: std::str::FromStr>(value: &str) -> std::result::Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse {value:?}"))
}

fn parse_positive(value: &str) -> std::result::Result<u32, String> {
    match parse_num::<u32>(value)? {
        0 => Err("must be at least 1".into()),
        v => Ok(v),
    }
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("{value:?} is not a boolean")),
    }
}

/// `lo:hi` with `1 <= lo <= hi`.
pub fn parse_range(value: &str) -> std::result::Result<(u64, u64), String> {
    let (lo, hi) = value.split_once(':').ok_or_else(|| format!("{value:?} is not lo:hi"))?;
    let (lo, hi): (u64, u64) = (parse_num(lo.trim())?, parse_num(hi.trim())?);
    if lo < 1 || lo > hi {
        return Err(format!("need 1 <= lo <= hi, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// `poisson:min:max:offsets` or `none` (every edge delivers in one step).
pub fn parse_delay(value: &str) -> std::result::Result<Option<DelaySetting>, String> {
    if value == "none" {
        return Ok(None);
    }
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    match parts.as_slice() {
        ["poisson", lo, hi, l] => {
            let d = DelaySetting {
                lambda_min: parse_num(lo)?,
                lambda_max: parse_num(hi)?,
                max_offset: parse_num(l)?,
            };
            if d.lambda_min < 1 || d.lambda_min > d.lambda_max || d.max_offset < 1 {
                return Err(format!("need 1 <= min <= max and offsets >= 1 in {value:?}"));
            }
            Ok(Some(d))
        }
        _ => Err(format!("{value:?} is not poisson:min:max:offsets or none")),
    }
}

fn parse_budgets(value: &str) -> std::result::Result<Vec<u64>, String> {
    let budgets: Vec<u64> = if value.contains(':') {
        let parts: Vec<&str> = value.split(':').map(str::trim).collect();
        let [start, end, step] = parts.as_slice() else {
            return Err(format!("{value:?} is not start:end:step"));
        };
        let (start, end, step): (u64, u64, u64) = (parse_num(start)?, parse_num(end)?, parse_num(step)?);
        if step == 0 {
            return Err("step must be positive".into());
        }
        (start..=end).step_by(step as usize).collect()
    } else {
        split_list(value).map(parse_num).collect::<std::result::Result<_, _>>()?
    };
    if budgets.is_empty() {
        return Err("no budgets".into());
    }
    if budgets.windows(2).any(|w| w[0] >= w[1]) {
        return Err("budgets must be strictly increasing".into());
    }
    Ok(budgets)
}
