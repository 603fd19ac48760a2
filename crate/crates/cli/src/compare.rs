//! Side-by-side runs of several algorithms on one objective at equal budgets.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::config::{ExperimentConfig, Mode};
use crate::error::{CliError, Result};
use crate::experiment::run_objective;
use crate::summary::{median, SummaryReport};

/// Per-seed best values for each compared entry, plus medians.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub labels: Vec<String>,
    pub seeds: Vec<u64>,
    /// `bests[entry][seed_index]`
    pub bests: Vec<Vec<f64>>,
    pub medians: Vec<f64>,
    pub summaries: Vec<SummaryReport>,
}

impl ComparisonTable {
    pub fn median_of(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.medians[i])
    }

    /// `seed,<label>...` rows followed by a `median` row.
    pub fn to_csv(&self) -> String {
        let mut out = format!("seed,{}\n", self.labels.join(","));
        for (row, seed) in self.seeds.iter().enumerate() {
            let cells: Vec<String> = self.bests.iter().map(|b| format!("{:e}", b[row])).collect();
            out.push_str(&format!("{seed},{}\n", cells.join(",")));
        }
        let medians: Vec<String> = self.medians.iter().map(|m| format!("{m:e}")).collect();
        out.push_str(&format!("median,{}\n", medians.join(",")));
        out
    }
}

impl fmt::Display for ComparisonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>10}", "seed")?;
        for label in &self.labels {
            write!(f, " {label:>14}")?;
        }
        writeln!(f)?;
        for (row, seed) in self.seeds.iter().enumerate() {
            write!(f, "{seed:>10}")?;
            for b in &self.bests {
                write!(f, " {:>14.6e}", b[row])?;
            }
            writeln!(f)?;
        }
        write!(f, "{:>10}", "median")?;
        for m in &self.medians {
            write!(f, " {m:>14.6e}")?;
        }
        writeln!(f)
    }
}

/// Expands each config into one entry per algorithm it names.
fn entries(configs: &[ExperimentConfig]) -> Vec<ExperimentConfig> {
    configs
        .iter()
        .flat_map(|c| {
            c.algorithms
                .iter()
                .map(move |&a| c.for_algorithm(a, c.out_dir.clone()))
        })
        .collect()
}

/// Checks that every entry faces the same objective, seeds and budget.
pub fn check_fairness(entries: &[ExperimentConfig]) -> Result<()> {
    let Some(first) = entries.first() else {
        return Err(CliError::Config("nothing to compare".into()));
    };
    if entries.len() < 2 {
        return Err(CliError::Config(
            "compare needs at least two algorithms".into(),
        ));
    }
    for e in entries {
        if e.mode == Mode::Sweep {
            return Err(CliError::Config(
                "compare works on a single objective, not a sweep".into(),
            ));
        }
        if e.budget() != first.budget() {
            return Err(CliError::Fairness(format!(
                "{} spends {} evaluations per seed, {} spends {}",
                first.algorithm(),
                first.budget(),
                e.algorithm(),
                e.budget()
            )));
        }
        if e.objective != first.objective {
            return Err(CliError::Config(
                "compared configs optimize different objectives".into(),
            ));
        }
        if e.seeds != first.seeds {
            return Err(CliError::Config(
                "compared configs use different seeds".into(),
            ));
        }
    }
    Ok(())
}

/// Runs every algorithm named across `configs` and writes each one's files to
/// `out_dir/<algorithm>/` plus `out_dir/comparison.csv`. Reports, never judges.
pub fn compare(configs: &[ExperimentConfig], out_dir: &Path) -> Result<ComparisonTable> {
    let entries = entries(configs);
    check_fairness(&entries)?;
    fs::create_dir_all(out_dir).map_err(CliError::io(out_dir))?;

    let mut labels: Vec<String> = Vec::new();
    let mut summaries = Vec::new();
    for entry in &entries {
        let base = entry.algorithm().to_string();
        let mut label = base.clone();
        let mut k = 2;
        while labels.contains(&label) {
            label = format!("{base}-{k}");
            k += 1;
        }
        let dir = out_dir.join(&label);
        summaries.push(run_objective(
            entry,
            entry.algorithm(),
            &entry.objective,
            &dir,
        )?);
        labels.push(label);
    }

    let bests: Vec<Vec<f64>> = summaries.iter().map(SummaryReport::best_values).collect();
    let medians = bests.iter().map(|b| median(b)).collect();
    let table = ComparisonTable {
        labels,
        seeds: entries[0].seeds.clone(),
        bests,
        medians,
        summaries,
    };
    let path = out_dir.join("comparison.csv");
    fs::write(&path, table.to_csv()).map_err(CliError::io(&path))?;
    Ok(table)
}
