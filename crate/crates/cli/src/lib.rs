//! Experiment harness for the `anthill` optimizer: JSON/flag configuration,
//! seeded runs that write convergence and pattern CSVs plus a JSON summary,
//! and equal-budget algorithm comparisons.

pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod summary;

pub use compare::{compare, ComparisonTable};
pub use config::{
    load_config, parse_config, ExperimentConfig, FileConfig, Mode, Objective, Overrides,
};
pub use error::{CliError, Result};
pub use experiment::run_experiment;
pub use summary::{Stats, SummaryReport};
