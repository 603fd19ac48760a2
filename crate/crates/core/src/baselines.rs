//! Comparison optimizers sharing the walk primitive and the draw conventions
//! of [`crate::optimizer`]: Ant Lion Optimizer, uniform random search, and a
//! coordinate hill climber.
//!
//! All of them spend exactly `P * (T + 1)` objective evaluations for a given
//! [`OptimizerConfig`] and report one convergence entry per `P` evaluations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::optimizer::{
    natural_selection, optimize, Ant, Evaluator, OptimizerConfig, RunReport, SearchSpace,
};
use crate::scalar::{fitness_cmp, Scalar};
use crate::stochastics::{scaled_walk_entry, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ahcoa,
    Alo,
    RandomSearch,
    HillClimb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Ahcoa,
        Algorithm::Alo,
        Algorithm::RandomSearch,
        Algorithm::HillClimb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ahcoa => "ahcoa",
            Self::Alo => "alo",
            Self::RandomSearch => "random",
            Self::HillClimb => "hillclimb",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ahcoa" => Ok(Self::Ahcoa),
            "alo" => Ok(Self::Alo),
            "random" | "randomsearch" | "random_search" => Ok(Self::RandomSearch),
            "hillclimb" | "hill_climb" => Ok(Self::HillClimb),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// Runs `algorithm` with default settings for the baselines.
pub fn run<T, F>(
    algorithm: Algorithm,
    objective: F,
    config: &OptimizerConfig<T>,
) -> Result<RunReport<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> T,
{
    match algorithm {
        Algorithm::Ahcoa => optimize(objective, config),
        Algorithm::Alo => run_alo(objective, config),
        Algorithm::RandomSearch => run_random_search(objective, config),
        Algorithm::HillClimb => run_hill_climb(objective, config, &HillClimbSettings::default()),
    }
}

/// Boundary shrink ratio `I` of the Ant Lion Optimizer.
pub fn alo_shrink_ratio(t: usize, total: usize) -> f64 {
    let progress = t as f64 / total as f64;
    let w = if progress > 0.95 {
        6
    } else if progress > 0.9 {
        5
    } else if progress > 0.75 {
        4
    } else if progress > 0.5 {
        3
    } else if progress > 0.1 {
        2
    } else {
        return 1.0;
    };
    10f64.powi(w) * progress
}

/// Random-walk position around `center` inside the global bounds shrunk by
/// `ratio`, with the sign of each bound flipped at random.
fn walk_around_antlion<T: Scalar>(
    center: &[T],
    space: &SearchSpace<T>,
    ratio: T,
    t: usize,
    total: usize,
    stream: &mut RngStream,
) -> Result<Vec<T>> {
    let lower_sign = if stream.next_uniform() < 0.5 {
        T::one()
    } else {
        -T::one()
    };
    let upper_sign = if stream.next_uniform() >= 0.5 {
        T::one()
    } else {
        -T::one()
    };
    (0..space.dim())
        .map(|i| {
            let a = lower_sign * space.lower()[i] / ratio + center[i];
            let b = upper_sign * space.upper()[i] / ratio + center[i];
            scaled_walk_entry(stream, total, t, a.min(b), a.max(b))
        })
        .collect()
}

/// Ant Lion Optimizer.
///
/// `P` antlions are initialized and evaluated; each iteration every ant walks
/// around a rank-roulette antlion and around the elite, takes the average,
/// and is evaluated. The best `P` of antlions and ants become the next
/// antlions.
///
/// Draw order: `P * D` initialization draws, then per iteration and per ant
/// one selection draw, two sign draws and `D` walks for the antlion, then two
/// sign draws and `D` walks for the elite.
pub fn run_alo<T, F>(objective: F, config: &OptimizerConfig<T>) -> Result<RunReport<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> T,
{
    config.require(2, 1)?;
    let space = &config.space;
    let total = config.iterations;
    let mut stream = RngStream::new(config.seed);
    let mut evaluator = Evaluator::new(objective);

    let mut antlions: Vec<Ant<T>> = (0..config.population)
        .map(|_| {
            let position = space.sample(&mut stream);
            let fitness = evaluator.eval(&position);
            Ant::new(position, fitness)
        })
        .collect();
    antlions.sort_by(|a, b| fitness_cmp(a.fitness, b.fitness));
    let mut elite = antlions[0].clone();
    let mut convergence = vec![(0, elite.fitness)];

    for t in 1..=total {
        let ratio = T::of(alo_shrink_ratio(t, total));
        let fitnesses: Vec<T> = antlions.iter().map(|a| a.fitness).collect();
        let mut ants = Vec::with_capacity(config.population);
        for _ in 0..config.population {
            let k = natural_selection(&fitnesses, &mut stream);
            let around_antlion =
                walk_around_antlion(&antlions[k].position, space, ratio, t, total, &mut stream)?;
            let around_elite =
                walk_around_antlion(&elite.position, space, ratio, t, total, &mut stream)?;
            let mut position: Vec<T> = around_antlion
                .iter()
                .zip(&around_elite)
                .map(|(&a, &e)| (a + e) / T::of(2.0))
                .collect();
            space.clamp_all(&mut position);
            ants.push(position);
        }
        for position in ants {
            let fitness = evaluator.eval(&position);
            antlions.push(Ant::new(position, fitness));
        }
        // stable: existing antlions win ties against new ants
        antlions.sort_by(|a, b| fitness_cmp(a.fitness, b.fitness));
        antlions.truncate(config.population);
        if antlions[0].fitness < elite.fitness {
            elite = antlions[0].clone();
        }
        convergence.push((t, elite.fitness));
    }

    Ok(RunReport {
        elite_position: elite.position,
        elite_fitness: elite.fitness,
        convergence,
        evaluations: evaluator.evaluations,
        nan_evaluations: evaluator.nan_evaluations,
    })
}

/// Tracks best-so-far and emits a convergence entry every `per_sweep` evaluations.
struct SweepRecorder<T> {
    per_sweep: usize,
    seen: usize,
    best: Option<Ant<T>>,
    convergence: Vec<(usize, T)>,
}

impl<T: Scalar> SweepRecorder<T> {
    fn new(per_sweep: usize) -> Self {
        Self {
            per_sweep,
            seen: 0,
            best: None,
            convergence: Vec::new(),
        }
    }

    fn record(&mut self, position: &[T], fitness: T) {
        let improved = self.best.as_ref().is_none_or(|b| fitness < b.fitness);
        if improved {
            self.best = Some(Ant::new(position.to_vec(), fitness));
        }
        self.seen += 1;
        if self.seen.is_multiple_of(self.per_sweep) {
            let best = self.best.as_ref().expect("recorded at least once").fitness;
            self.convergence
                .push((self.seen / self.per_sweep - 1, best));
        }
    }

    fn finish<F>(self, evaluator: Evaluator<F>) -> RunReport<T> {
        let best = self.best.expect("budget is at least one evaluation");
        RunReport {
            elite_position: best.position,
            elite_fitness: best.fitness,
            convergence: self.convergence,
            evaluations: evaluator.evaluations,
            nan_evaluations: evaluator.nan_evaluations,
        }
    }
}

/// `P * (T + 1)` independent uniform samples, `D` draws each.
pub fn run_random_search<T, F>(objective: F, config: &OptimizerConfig<T>) -> Result<RunReport<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> T,
{
    config.require(1, 0)?;
    let mut stream = RngStream::new(config.seed);
    let mut evaluator = Evaluator::new(objective);
    let mut recorder = SweepRecorder::new(config.population);
    for _ in 0..config.budget() {
        let position = config.space.sample(&mut stream);
        let fitness = evaluator.eval(&position);
        recorder.record(&position, fitness);
    }
    Ok(recorder.finish(evaluator))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HillClimbSettings<T> {
    /// Starting point; drawn uniformly from the space when absent.
    pub start: Option<Vec<T>>,
    /// Initial step as a fraction of each dimension's width.
    pub initial_step: T,
    /// Consecutive rejections before the step is halved.
    pub patience: usize,
}

impl<T: Scalar> Default for HillClimbSettings<T> {
    fn default() -> Self {
        Self {
            start: None,
            initial_step: T::of(0.1),
            patience: 20,
        }
    }
}

/// (1+1) coordinate hill climber.
///
/// Each step draws a coordinate, then a direction, and moves that coordinate
/// by `step * width` (clamped). A move is kept only if strictly better.
pub fn run_hill_climb<T, F>(
    objective: F,
    config: &OptimizerConfig<T>,
    settings: &HillClimbSettings<T>,
) -> Result<RunReport<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> T,
{
    config.require(1, 0)?;
    if !(settings.initial_step > T::zero()) || settings.patience == 0 {
        return Err(Error::InvalidConfig(
            "hill climb needs a positive step and patience".into(),
        ));
    }
    let space = &config.space;
    let mut stream = RngStream::new(config.seed);
    let mut evaluator = Evaluator::new(objective);
    let mut recorder = SweepRecorder::new(config.population);

    let mut current = match &settings.start {
        Some(start) => {
            if start.len() != space.dim() {
                return Err(Error::LengthMismatch {
                    expected: space.dim(),
                    actual: start.len(),
                });
            }
            let mut p = start.clone();
            space.clamp_all(&mut p);
            p
        }
        None => space.sample(&mut stream),
    };
    let mut current_fitness = evaluator.eval(&current);
    recorder.record(&current, current_fitness);

    let mut step = settings.initial_step;
    let mut rejections = 0;
    let mut candidate = current.clone();
    for _ in 1..config.budget() {
        let i = stream.index(space.dim());
        let delta = step * space.width(i);
        let moved = if stream.next_uniform() > 0.5 {
            current[i] + delta
        } else {
            current[i] - delta
        };
        candidate[i] = space.clamp(i, moved);
        let fitness = evaluator.eval(&candidate);
        recorder.record(&candidate, fitness);
        if fitness < current_fitness {
            current[i] = candidate[i];
            current_fitness = fitness;
            rejections = 0;
        } else {
            candidate[i] = current[i];
            rejections += 1;
            if rejections == settings.patience {
                step = step / T::of(2.0);
                rejections = 0;
            }
        }
    }
    let report = recorder.finish(evaluator);
    debug_assert_eq!(report.elite_fitness, current_fitness);
    Ok(report)
}
