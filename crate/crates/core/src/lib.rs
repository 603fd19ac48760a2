//! Ant hill colonization optimization.
//!
//! A seeded, bit-reproducible population optimizer whose search box shrinks
//! along a hill-construction schedule, with the unimodal F1 to F7 test suite,
//! a linear antenna array side-lobe synthesis objective, and baseline
//! optimizers (Ant Lion Optimizer, random search, hill climbing) for
//! comparison.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the command-line harness uses.
//!
//! ```
//! use anthill::{optimize, Benchmark, BenchmarkId, OptimizerConfig64};
//!
//! let bench = Benchmark::new(BenchmarkId::F1, 5);
//! let config = OptimizerConfig64::new(bench.space().unwrap(), 10, 50, 42);
//! let report = optimize(bench.objective(0), &config).unwrap();
//! assert!(report.elite_fitness < report.initial_best());
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antenna;
pub mod baselines;
pub mod benchmarks;
mod error;
pub mod optimizer;
mod scalar;
pub mod stochastics;

pub use antenna::{
    array_factor, compute_pattern, extract_metrics, synthesis_fitness, ArrayGeometry, Excitation,
    PatternMetrics, RadiationPattern, SynthesisProblem, SynthesisVariables,
};
pub use baselines::{
    run, run_alo, run_hill_climb, run_random_search, Algorithm, HillClimbSettings,
};
pub use benchmarks::{evaluate, Benchmark, BenchmarkId, Evaluation};
pub use error::{Error, Result};
pub use optimizer::{
    candidate_position, natural_selection, optimize, Ant, ConstructionSchedule, HillShape,
    OptimizerConfig, RunReport, SearchSpace,
};
pub use scalar::Scalar;
pub use stochastics::{random_walk, scale_walk, RandomWalk, RngStream};

pub type Ant64 = Ant<f64>;
pub type SearchSpace64 = SearchSpace<f64>;
pub type HillShape64 = HillShape<f64>;
pub type ConstructionSchedule64 = ConstructionSchedule<f64>;
pub type OptimizerConfig64 = OptimizerConfig<f64>;
pub type RunReport64 = RunReport<f64>;
pub type ArrayGeometry64 = ArrayGeometry<f64>;
pub type Excitation64 = Excitation<f64>;
pub type RadiationPattern64 = RadiationPattern<f64>;
pub type PatternMetrics64 = PatternMetrics<f64>;
pub type SynthesisProblem64 = SynthesisProblem<f64>;

pub type SearchSpace32 = SearchSpace<f32>;
pub type OptimizerConfig32 = OptimizerConfig<f32>;
pub type RunReport32 = RunReport<f32>;
