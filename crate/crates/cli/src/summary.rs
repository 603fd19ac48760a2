use serde::{Deserialize, Serialize};

/// Descriptive statistics over per-seed best values.
///
/// `std` is the sample standard deviation (`n - 1` denominator), 0 for a
/// single value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub count: usize,
    pub median: f64,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(Self {
            count: n,
            median,
            mean,
            std,
            min: sorted[0],
            max: sorted[n - 1],
        })
    }
}

pub fn median(values: &[f64]) -> f64 {
    Stats::from_values(values).map_or(f64::NAN, |s| s.median)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub best_fitness: f64,
    pub initial_best: f64,
    pub evaluations: usize,
    pub nan_evaluations: usize,
    pub wall_clock_s: f64,
    pub best_position: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntennaRun {
    pub seed: u64,
    pub max_sll_db: f64,
    pub sidelobe_count: usize,
    pub amplitudes: Vec<f64>,
    pub phases_deg: Vec<f64>,
    /// `[theta_deg, level_db]` at each requested null.
    pub null_depths_db: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntennaSummary {
    pub n_elements: usize,
    pub spacing: f64,
    pub uniform_max_sll_db: f64,
    pub uniform_sidelobe_count: usize,
    pub runs: Vec<AntennaRun>,
}

/// Contents of `summary.json` for one algorithm on one objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub mode: String,
    pub algorithm: String,
    pub objective: String,
    pub population: usize,
    pub iterations: usize,
    pub budget: usize,
    pub runs: Vec<SeedRun>,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antenna: Option<AntennaSummary>,
}

impl SummaryReport {
    pub fn best_values(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.best_fitness).collect()
    }
}
