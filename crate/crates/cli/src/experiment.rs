//! Seeded experiment execution and the files it writes.
//!
//! Per objective directory:
//! - `convergence_<seed>.csv`: `iteration,best_fitness`, one row per iteration
//!   (iteration 0 is the initial population);
//! - antenna mode only: `pattern_<seed>.csv` for the elite design and
//!   `pattern_uniform.csv` for the uniform array;
//! - `summary.json`, written after every seed has finished.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anthill::{
    compute_pattern, extract_metrics, run, Algorithm, Benchmark, BenchmarkId, Excitation64,
    RngStream, RunReport64, SynthesisProblem64,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, Mode, Objective};
use crate::error::{CliError, Result};
use crate::summary::{AntennaRun, AntennaSummary, SeedRun, Stats, SummaryReport};

/// Writes the convergence history as CSV.
pub fn write_convergence<W: Write>(
    mut out: W,
    convergence: &[(usize, f64)],
) -> std::io::Result<()> {
    out.write_all(b"iteration,best_fitness\n")?;
    for (iteration, best) in convergence {
        writeln!(out, "{iteration},{best:e}")?;
    }
    out.flush()
}

fn create_file(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(CliError::io(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = create_file(path)?;
    serde_json::to_writer_pretty(&mut out, value)
        .map_err(std::io::Error::from)
        .and_then(|_| out.write_all(b"\n"))
        .and_then(|_| out.flush())
        .map_err(CliError::io(path))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))
}

/// Seed for the F7 noise stream, kept apart from the optimizer's stream.
pub fn noise_seed(seed: u64) -> u64 {
    RngStream::derive(seed, 1).state()
}

struct SeedOutcome {
    run: SeedRun,
    antenna: Option<AntennaRun>,
}

fn run_benchmark_seed(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    id: BenchmarkId,
    dim: usize,
    seed: u64,
) -> Result<RunReport64> {
    let bench = Benchmark::new(id, dim);
    let opt = config.optimizer_config(bench.space()?, seed);
    Ok(run(algorithm, bench.objective(noise_seed(seed)), &opt)?)
}

fn run_antenna_seed(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    problem: &SynthesisProblem64,
    seed: u64,
) -> Result<RunReport64> {
    let opt = config.optimizer_config(problem.search_space()?, seed);
    Ok(run(algorithm, problem.objective(), &opt)?)
}

fn write_pattern(
    path: &Path,
    problem: &SynthesisProblem64,
    excitation: &Excitation64,
) -> Result<()> {
    let pattern = compute_pattern(&problem.geometry, excitation, problem.resolution_deg)?;
    let mut out = create_file(path)?;
    pattern
        .write_csv(&mut out)
        .and_then(|_| out.flush())
        .map_err(CliError::io(path))
}

fn run_one_seed(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    objective: &Objective,
    dir: &Path,
    seed: u64,
) -> Result<SeedOutcome> {
    let started = Instant::now();
    let report = match objective {
        Objective::Benchmark { id, dim } => run_benchmark_seed(config, algorithm, *id, *dim, seed)?,
        Objective::Antenna(problem) => run_antenna_seed(config, algorithm, problem, seed)?,
        Objective::Sweep { .. } => unreachable!("sweeps are expanded before running seeds"),
    };
    let wall_clock_s = started.elapsed().as_secs_f64();

    let path = dir.join(format!("convergence_{seed}.csv"));
    let mut out = create_file(&path)?;
    write_convergence(&mut out, &report.convergence).map_err(CliError::io(&path))?;

    let antenna = match objective {
        Objective::Antenna(problem) => {
            let excitation = problem.decode(&report.elite_position)?;
            write_pattern(
                &dir.join(format!("pattern_{seed}.csv")),
                problem,
                &excitation,
            )?;
            let metrics = problem.metrics(&report.elite_position)?;
            Some(AntennaRun {
                seed,
                max_sll_db: metrics.max_sll_db,
                sidelobe_count: metrics.sidelobe_peaks.len(),
                amplitudes: excitation.amplitudes().to_vec(),
                phases_deg: excitation.phases_deg().to_vec(),
                null_depths_db: metrics
                    .null_depths_db
                    .iter()
                    .map(|&(t, l)| [t, l])
                    .collect(),
            })
        }
        _ => None,
    };

    Ok(SeedOutcome {
        run: SeedRun {
            seed,
            best_fitness: report.elite_fitness,
            initial_best: report.initial_best(),
            evaluations: report.evaluations,
            nan_evaluations: report.nan_evaluations,
            wall_clock_s,
            best_position: report.elite_position,
        },
        antenna,
    })
}

/// Runs every seed of `algorithm` on one objective and writes its files into `dir`.
pub fn run_objective(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    objective: &Objective,
    dir: &Path,
) -> Result<SummaryReport> {
    ensure_dir(dir)?;

    let uniform = match objective {
        Objective::Antenna(problem) => {
            let n = problem.geometry.n_elements;
            let excitation = Excitation64::uniform(n);
            write_pattern(&dir.join("pattern_uniform.csv"), problem, &excitation)?;
            let pattern = compute_pattern(&problem.geometry, &excitation, problem.resolution_deg)?;
            Some(extract_metrics(&pattern, &[])?)
        }
        _ => None,
    };

    let outcomes = config
        .seeds
        .par_iter()
        .map(|&seed| run_one_seed(config, algorithm, objective, dir, seed))
        .collect::<Result<Vec<_>>>()?;

    let mut runs = Vec::with_capacity(outcomes.len());
    let mut antenna_runs = Vec::new();
    for outcome in outcomes {
        runs.push(outcome.run);
        antenna_runs.extend(outcome.antenna);
    }
    let values: Vec<f64> = runs.iter().map(|r| r.best_fitness).collect();
    let stats = Stats::from_values(&values).expect("at least one seed");

    let antenna = match (objective, uniform) {
        (Objective::Antenna(problem), Some(uniform)) => Some(AntennaSummary {
            n_elements: problem.geometry.n_elements,
            spacing: problem.geometry.spacing,
            uniform_max_sll_db: uniform.max_sll_db,
            uniform_sidelobe_count: uniform.sidelobe_peaks.len(),
            runs: antenna_runs,
        }),
        _ => None,
    };

    let summary = SummaryReport {
        mode: match objective {
            Objective::Antenna(_) => Mode::Antenna,
            _ => config.mode,
        }
        .to_string(),
        algorithm: algorithm.to_string(),
        objective: objective.label(),
        population: config.population,
        iterations: config.iterations,
        budget: config.budget(),
        runs,
        stats,
        antenna,
    };
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Runs the configured experiment with its first algorithm.
///
/// Bench and antenna modes write straight into `out_dir` and return one
/// summary. A sweep writes one `<benchmark>_d<dim>` subdirectory per cell,
/// plus a top-level `summary.json` holding every cell's summary.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<SummaryReport>> {
    let algorithm = config.algorithm();
    match &config.objective {
        Objective::Sweep { ids, dims } => {
            ensure_dir(&config.out_dir)?;
            let mut summaries = Vec::new();
            for &id in ids {
                for &dim in dims {
                    let cell = Objective::Benchmark { id, dim };
                    let dir = config.out_dir.join(cell.label());
                    summaries.push(run_objective(config, algorithm, &cell, &dir)?);
                }
            }
            write_json(&config.out_dir.join("summary.json"), &summaries)?;
            Ok(summaries)
        }
        objective => Ok(vec![run_objective(
            config,
            algorithm,
            objective,
            &config.out_dir,
        )?]),
    }
}
