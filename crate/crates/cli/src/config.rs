//! Experiment configuration: a JSON document, overridden field by field by
//! command-line flags, validated into an [`ExperimentConfig`].

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anthill::{
    Algorithm, ArrayGeometry64, BenchmarkId, HillShape64, OptimizerConfig64, SearchSpace64,
    SynthesisProblem64, SynthesisVariables,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const OUT_DIR_ENV: &str = "ANTHILL_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "anthill-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bench,
    Antenna,
    Sweep,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Bench => "bench",
            Mode::Antenna => "antenna",
            Mode::Sweep => "sweep",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    #[default]
    Pyramid,
    Cone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariablesName {
    #[default]
    Amplitudes,
    AmplitudesAndPhases,
}

/// Antenna section of the JSON config; every field optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaFile {
    pub n_elements: Option<usize>,
    pub spacing: Option<f64>,
    pub variables: Option<VariablesName>,
    pub amplitude_bounds: Option<[f64; 2]>,
    pub phase_bounds: Option<[f64; 2]>,
    pub symmetric: Option<bool>,
    pub null_targets: Option<Vec<[f64; 2]>>,
    pub null_weight: Option<f64>,
    pub resolution: Option<f64>,
}

/// Raw JSON config document. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mode: Option<Mode>,
    pub algorithm: Option<String>,
    pub algorithms: Option<Vec<String>>,
    pub benchmark: Option<String>,
    pub benchmarks: Option<Vec<String>>,
    pub dim: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub pop: Option<usize>,
    pub iters: Option<usize>,
    pub seeds: Option<Vec<u64>>,
    pub out: Option<PathBuf>,
    pub s_min: Option<f64>,
    pub shape: Option<ShapeName>,
    pub antenna: Option<AntennaFile>,
}

impl FileConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

/// Values given on the command line; each one replaces the file's value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    /// Comma-separated; more than one name only makes sense for `compare`.
    pub algorithm: Option<String>,
    /// Comma-separated; more than one id only makes sense for `sweep`.
    pub benchmark: Option<String>,
    /// Comma-separated; more than one value only makes sense for `sweep`.
    pub dim: Option<String>,
    pub pop: Option<usize>,
    pub iters: Option<usize>,
    pub seeds: Option<String>,
    pub out: Option<PathBuf>,
}

/// What the optimizer minimizes.
#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    Benchmark {
        id: BenchmarkId,
        dim: usize,
    },
    Antenna(SynthesisProblem64),
    Sweep {
        ids: Vec<BenchmarkId>,
        dims: Vec<usize>,
    },
}

impl Objective {
    pub fn label(&self) -> String {
        match self {
            Objective::Benchmark { id, dim } => format!("{id}_d{dim}"),
            Objective::Antenna(p) => {
                format!("antenna_n{}_d{}", p.geometry.n_elements, p.geometry.spacing)
            }
            Objective::Sweep { .. } => "sweep".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub algorithms: Vec<Algorithm>,
    pub objective: Objective,
    pub population: usize,
    pub iterations: usize,
    pub s_min: f64,
    pub shape: ShapeName,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn algorithm(&self) -> Algorithm {
        self.algorithms[0]
    }

    /// Objective evaluations per seed.
    pub fn budget(&self) -> usize {
        self.population * (self.iterations + 1)
    }

    pub fn hill_shape(&self) -> HillShape64 {
        match self.shape {
            ShapeName::Pyramid => HillShape64::default(),
            ShapeName::Cone => HillShape64::Cone {
                radius: 1.0,
                height: 1.0,
            },
        }
    }

    pub fn optimizer_config(&self, space: SearchSpace64, seed: u64) -> OptimizerConfig64 {
        OptimizerConfig64::new(space, self.population, self.iterations, seed)
            .with_shape(self.hill_shape())
            .with_s_min(self.s_min)
    }

    /// Copy with a single algorithm and a different output directory.
    pub fn for_algorithm(&self, algorithm: Algorithm, out_dir: PathBuf) -> Self {
        Self {
            algorithms: vec![algorithm],
            out_dir,
            ..self.clone()
        }
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty())
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    split_list(s)
        .map(|p| {
            p.parse()
                .map_err(|_| config_err(format!("invalid {what} {p:?}")))
        })
        .collect()
}

fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

/// Builds a validated config.
///
/// `mode` comes from the subcommand; `None` (used by `compare`) takes the
/// file's mode, defaulting to `bench`. A file whose mode disagrees with the
/// subcommand is rejected.
pub fn parse_config(
    file: Option<FileConfig>,
    overrides: &Overrides,
    mode: Option<Mode>,
) -> Result<ExperimentConfig> {
    let file = file.unwrap_or_default();
    let mode = match (mode, file.mode) {
        (Some(cmd), Some(doc)) if cmd != doc => {
            return Err(config_err(format!(
                "config mode {doc:?} does not match subcommand {cmd}"
            )))
        }
        (Some(cmd), _) => cmd,
        (None, Some(doc)) => doc,
        (None, None) => Mode::Bench,
    };

    let algorithm_names: Vec<String> =
        match (&overrides.algorithm, &file.algorithms, &file.algorithm) {
            (Some(flag), _, _) => split_list(flag).map(String::from).collect(),
            (None, Some(list), _) => list.clone(),
            (None, None, Some(one)) => vec![one.clone()],
            (None, None, None) => vec!["ahcoa".to_string()],
        };
    let algorithms = algorithm_names
        .iter()
        .map(|n| n.parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()?;
    if algorithms.is_empty() {
        return Err(config_err("no algorithm given"));
    }

    let benchmark_names: Option<Vec<String>> =
        match (&overrides.benchmark, &file.benchmarks, &file.benchmark) {
            (Some(flag), _, _) => Some(split_list(flag).map(String::from).collect()),
            (None, Some(list), _) => Some(list.clone()),
            (None, None, Some(one)) => Some(vec![one.clone()]),
            (None, None, None) => None,
        };
    let benchmark_ids = benchmark_names
        .map(|names| {
            names
                .iter()
                .map(|n| n.parse::<BenchmarkId>())
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;

    let dims: Option<Vec<usize>> = match (&overrides.dim, &file.dims, file.dim) {
        (Some(flag), _, _) => Some(parse_list(flag, "dimension")?),
        (None, Some(list), _) => Some(list.clone()),
        (None, None, Some(d)) => Some(vec![d]),
        (None, None, None) => None,
    };
    if let Some(d) = &dims {
        if d.is_empty() || d.contains(&0) {
            return Err(config_err("dimensions must be at least 1"));
        }
    }

    let objective = match mode {
        Mode::Bench => {
            let ids = benchmark_ids.unwrap_or_else(|| vec![BenchmarkId::F1]);
            let dims = dims.unwrap_or_else(|| vec![30]);
            if ids.len() != 1 || dims.len() != 1 {
                return Err(config_err(
                    "bench mode takes exactly one benchmark and one dimension (use sweep for more)",
                ));
            }
            if file.antenna.is_some() {
                return Err(config_err("antenna section given in bench mode"));
            }
            Objective::Benchmark {
                id: ids[0],
                dim: dims[0],
            }
        }
        Mode::Sweep => {
            if file.antenna.is_some() {
                return Err(config_err("antenna section given in sweep mode"));
            }
            Objective::Sweep {
                ids: benchmark_ids.unwrap_or_else(|| BenchmarkId::ALL.to_vec()),
                dims: dims.unwrap_or_else(|| vec![30, 200]),
            }
        }
        Mode::Antenna => {
            if benchmark_ids.is_some() || dims.is_some() {
                return Err(config_err("benchmark/dim do not apply to antenna mode"));
            }
            Objective::Antenna(antenna_problem(file.antenna.clone().unwrap_or_default())?)
        }
    };

    let population = overrides.pop.or(file.pop).unwrap_or(30);
    let iterations = overrides.iters.or(file.iters).unwrap_or(500);
    let seeds = match &overrides.seeds {
        Some(flag) => parse_list(flag, "seed")?,
        None => file.seeds.clone().unwrap_or_else(|| vec![1]),
    };
    let out_dir = overrides
        .out
        .clone()
        .or(file.out.clone())
        .unwrap_or_else(default_out_dir);
    let s_min = file.s_min.unwrap_or(anthill::optimizer::DEFAULT_S_MIN);

    if iterations < 1 {
        return Err(config_err("iters must be at least 1"));
    }
    let min_pop = if algorithms
        .iter()
        .any(|a| matches!(a, Algorithm::Ahcoa | Algorithm::Alo))
    {
        2
    } else {
        1
    };
    if population < min_pop {
        return Err(config_err(format!("pop must be at least {min_pop}")));
    }
    if seeds.is_empty() {
        return Err(config_err("seeds must not be empty"));
    }
    let mut unique = seeds.clone();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != seeds.len() {
        return Err(config_err("seeds must be distinct"));
    }
    if !(s_min > 0.0 && s_min < 1.0) {
        return Err(config_err(format!("s_min must lie in (0, 1), got {s_min}")));
    }

    Ok(ExperimentConfig {
        mode,
        algorithms,
        objective,
        population,
        iterations,
        s_min,
        shape: file.shape.unwrap_or_default(),
        seeds,
        out_dir,
    })
}

/// Reads `path` (when given) and applies the overrides.
pub fn load_config(
    path: Option<&Path>,
    overrides: &Overrides,
    mode: Option<Mode>,
) -> Result<ExperimentConfig> {
    let file = path.map(FileConfig::load).transpose()?;
    parse_config(file, overrides, mode)
}

fn antenna_problem(section: AntennaFile) -> Result<SynthesisProblem64> {
    let geometry = ArrayGeometry64::new(
        section.n_elements.unwrap_or(10),
        section.spacing.unwrap_or(0.5),
    )?;
    let mut problem = SynthesisProblem64::new(geometry);
    if let Some(v) = section.variables {
        problem.variables = match v {
            VariablesName::Amplitudes => SynthesisVariables::AmplitudesOnly,
            VariablesName::AmplitudesAndPhases => SynthesisVariables::AmplitudesAndPhases,
        };
    }
    if let Some([lo, hi]) = section.amplitude_bounds {
        problem.amplitude_bounds = (lo, hi);
    }
    if let Some([lo, hi]) = section.phase_bounds {
        problem.phase_bounds_deg = (lo, hi);
    }
    if let Some(s) = section.symmetric {
        problem.symmetric = s;
    }
    if let Some(targets) = section.null_targets {
        problem.null_targets = targets.into_iter().map(|[t, db]| (t, db)).collect();
    }
    if let Some(w) = section.null_weight {
        problem.null_weight = w;
    }
    if let Some(r) = section.resolution {
        problem.resolution_deg = r;
    }
    problem.validate()?;
    Ok(problem)
}
