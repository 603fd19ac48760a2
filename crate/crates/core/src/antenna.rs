//! Linear array factor, pattern metrics, and the side-lobe synthesis objective.
//!
//! Elements are isotropic and sit at `z_n = n - (N + 1) / 2` (in units of the
//! spacing), `n = 1..=N`, along the array axis, so the array factor is
//!
//! ```text
//! AF(theta) = sum_n a_n * exp(j * (2 pi d z_n cos(theta) + phi_n))
//! ```
//!
//! with `d` in wavelengths and `phi_n` in degrees at the interface.

use std::io::{self, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::optimizer::SearchSpace;
use crate::scalar::Scalar;

/// Lowest level reported in dB relative to the main-lobe peak.
pub const DB_FLOOR: f64 = -120.0;
/// Secondary maxima within this many dB of the main peak are grating lobes.
pub const GRATING_LOBE_MARGIN_DB: f64 = 0.5;
pub const DEFAULT_RESOLUTION_DEG: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry<T> {
    pub n_elements: usize,
    /// Inter-element spacing in wavelengths.
    pub spacing: T,
}

impl<T: Scalar> ArrayGeometry<T> {
    pub fn new(n_elements: usize, spacing: T) -> Result<Self> {
        if n_elements < 2 {
            return Err(Error::InvalidArray(format!(
                "need at least 2 elements, got {n_elements}"
            )));
        }
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::InvalidArray(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self {
            n_elements,
            spacing,
        })
    }

    /// Element coordinate for zero-based index `n`, centred on the array.
    pub fn coordinate(&self, n: usize) -> T {
        T::of_usize(n) - T::of_usize(self.n_elements - 1) / T::of(2.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Excitation<T> {
    amplitudes: Vec<T>,
    phases_deg: Vec<T>,
}

impl<T: Scalar> Excitation<T> {
    pub fn new(amplitudes: Vec<T>, phases_deg: Vec<T>) -> Result<Self> {
        if amplitudes.len() != phases_deg.len() {
            return Err(Error::LengthMismatch {
                expected: amplitudes.len(),
                actual: phases_deg.len(),
            });
        }
        if let Some(bad) = amplitudes.iter().find(|a| !(**a > T::zero())) {
            return Err(Error::InvalidArray(format!(
                "amplitudes must be strictly positive, got {bad}"
            )));
        }
        Ok(Self {
            amplitudes,
            phases_deg,
        })
    }

    /// Unit amplitudes, zero phases.
    pub fn uniform(n: usize) -> Self {
        Self {
            amplitudes: vec![T::one(); n],
            phases_deg: vec![T::zero(); n],
        }
    }

    /// Given amplitudes with zero phases.
    pub fn amplitudes_only(amplitudes: Vec<T>) -> Result<Self> {
        let n = amplitudes.len();
        Self::new(amplitudes, vec![T::zero(); n])
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn phases_deg(&self) -> &[T] {
        &self.phases_deg
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    fn weights(&self) -> Vec<Complex<T>> {
        self.amplitudes
            .iter()
            .zip(&self.phases_deg)
            .map(|(&a, &p)| Complex::from_polar(a, p.to_radians()))
            .collect()
    }

    fn check(&self, geometry: &ArrayGeometry<T>) -> Result<()> {
        if self.len() != geometry.n_elements {
            return Err(Error::LengthMismatch {
                expected: geometry.n_elements,
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// Complex array factor at one angle, summed term by term.
pub fn array_factor<T: Scalar>(
    geometry: &ArrayGeometry<T>,
    excitation: &Excitation<T>,
    theta_deg: T,
) -> Result<Complex<T>> {
    excitation.check(geometry)?;
    let k = T::TAU() * geometry.spacing * theta_deg.to_radians().cos();
    Ok((0..geometry.n_elements)
        .map(|n| {
            let phase = k * geometry.coordinate(n) + excitation.phases_deg[n].to_radians();
            Complex::from_polar(excitation.amplitudes[n], phase)
        })
        .sum())
}

/// Pattern sampled on a uniform grid over [0, 180] degrees, normalized to a
/// 0 dB peak.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationPattern<T> {
    theta_deg: Vec<T>,
    magnitude_db: Vec<T>,
    resolution_deg: T,
}

impl<T: Scalar> RadiationPattern<T> {
    pub fn theta_deg(&self) -> &[T] {
        &self.theta_deg
    }

    pub fn magnitude_db(&self) -> &[T] {
        &self.magnitude_db
    }

    pub fn resolution_deg(&self) -> T {
        self.resolution_deg
    }

    pub fn len(&self) -> usize {
        self.theta_deg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta_deg.is_empty()
    }

    /// Grid index closest to `theta_deg`.
    pub fn nearest_index(&self, theta_deg: T) -> usize {
        let idx = (theta_deg / self.resolution_deg).round();
        if idx <= T::zero() {
            0
        } else {
            idx.to_usize().unwrap_or(usize::MAX).min(self.len() - 1)
        }
    }

    pub fn level_at(&self, theta_deg: T) -> T {
        self.magnitude_db[self.nearest_index(theta_deg)]
    }

    /// Writes `theta_deg,af_db` rows with six decimals.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(b"theta_deg,af_db\n")?;
        for (t, m) in self.theta_deg.iter().zip(&self.magnitude_db) {
            writeln!(out, "{},{}", fixed6(*t), fixed6(*m))?;
        }
        Ok(())
    }
}

fn fixed6<T: Scalar>(v: T) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Number of grid steps for a resolution, if it tiles 180 degrees exactly.
fn grid_steps(resolution_deg: f64) -> Option<usize> {
    if !(resolution_deg > 0.0) {
        return None;
    }
    let steps = 180.0 / resolution_deg;
    let rounded = steps.round();
    if rounded >= 180.0 && (steps - rounded).abs() <= 1e-9 * rounded {
        Some(rounded as usize)
    } else {
        None
    }
}

pub fn compute_pattern<T: Scalar>(
    geometry: &ArrayGeometry<T>,
    excitation: &Excitation<T>,
    resolution_deg: T,
) -> Result<RadiationPattern<T>> {
    excitation.check(geometry)?;
    let steps = grid_steps(resolution_deg.to_f64_lossy())
        .ok_or(Error::InvalidResolution(resolution_deg.to_f64_lossy()))?;
    let step_deg = T::of(180.0) / T::of_usize(steps);
    let theta_deg: Vec<T> = (0..=steps).map(|k| T::of_usize(k) * step_deg).collect();

    // cos(180 - theta) = -cos(theta); mirror so symmetric designs give
    // symmetric patterns to the last bit
    let mut cosines = vec![T::zero(); steps + 1];
    for k in 0..=steps / 2 {
        let c = theta_deg[k].to_radians().cos();
        cosines[k] = c;
        cosines[steps - k] = -c;
    }
    if steps % 2 == 0 {
        cosines[steps / 2] = T::zero();
    }

    let weights = excitation.weights();
    let first = geometry.coordinate(0);
    let magnitudes: Vec<T> = cosines
        .iter()
        .map(|&c| {
            let psi = T::TAU() * geometry.spacing * c;
            let step = Complex::from_polar(T::one(), psi);
            let mut phasor = Complex::from_polar(T::one(), psi * first);
            let mut sum = Complex::new(T::zero(), T::zero());
            for w in &weights {
                sum = sum + *w * phasor;
                phasor = phasor * step;
            }
            sum.norm()
        })
        .collect();

    let peak = magnitudes.iter().fold(T::zero(), |m, &v| m.max(v));
    if !(peak > T::zero()) {
        return Err(Error::ZeroPattern);
    }
    let floor = T::of(DB_FLOOR);
    let twenty = T::of(20.0);
    let magnitude_db = magnitudes
        .iter()
        .map(|&m| (twenty * (m / peak).log10()).max(floor))
        .collect();

    Ok(RadiationPattern {
        theta_deg,
        magnitude_db,
        resolution_deg: step_deg,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternMetrics<T> {
    pub main_lobe_theta_deg: T,
    pub first_null_left_deg: T,
    pub first_null_right_deg: T,
    /// `(theta_deg, level_db)` for every local maximum outside the main lobe.
    pub sidelobe_peaks: Vec<(T, T)>,
    /// Side-lobe peaks within [`GRATING_LOBE_MARGIN_DB`] of the main peak.
    pub grating_lobes: Vec<(T, T)>,
    /// Highest side-lobe peak, or [`DB_FLOOR`] when there is none.
    pub max_sll_db: T,
    /// `(requested_theta_deg, level_db)` in query order.
    pub null_depths_db: Vec<(T, T)>,
}

/// Main lobe, flanking nulls, side-lobe peaks and requested null depths.
///
/// The first nulls are found by descending from the main peak until the
/// pattern rises again or the grid ends. A side-lobe peak is any sample
/// outside that span strictly above its neighbours; an end sample only needs
/// to exceed its one neighbour.
pub fn extract_metrics<T: Scalar>(
    pattern: &RadiationPattern<T>,
    null_queries: &[T],
) -> Result<PatternMetrics<T>> {
    let db = &pattern.magnitude_db;
    let n = db.len();
    let lowest = db.iter().fold(T::infinity(), |m, &v| m.min(v));
    let mut main = 0;
    for i in 1..n {
        if db[i] > db[main] {
            main = i;
        }
    }
    if n < 3 || !(db[main] > lowest) {
        return Err(Error::FlatPattern);
    }

    let mut left = main;
    while left > 0 && db[left - 1] <= db[left] {
        left -= 1;
    }
    let mut right = main;
    while right + 1 < n && db[right + 1] <= db[right] {
        right += 1;
    }

    let is_peak = |i: usize| {
        let above_prev = i == 0 || db[i] > db[i - 1];
        let above_next = i + 1 == n || db[i] > db[i + 1];
        above_prev && above_next
    };
    let sidelobe_peaks: Vec<(T, T)> = (0..left)
        .chain(right + 1..n)
        .filter(|&i| is_peak(i))
        .map(|i| (pattern.theta_deg[i], db[i]))
        .collect();

    let margin = db[main] - T::of(GRATING_LOBE_MARGIN_DB);
    let grating_lobes = sidelobe_peaks
        .iter()
        .copied()
        .filter(|&(_, level)| level >= margin)
        .collect();
    let max_sll_db = sidelobe_peaks
        .iter()
        .map(|&(_, level)| level)
        .fold(T::of(DB_FLOOR), T::max);
    let null_depths_db = null_queries
        .iter()
        .map(|&theta| (theta, pattern.level_at(theta)))
        .collect();

    Ok(PatternMetrics {
        main_lobe_theta_deg: pattern.theta_deg[main],
        first_null_left_deg: pattern.theta_deg[left],
        first_null_right_deg: pattern.theta_deg[right],
        sidelobe_peaks,
        grating_lobes,
        max_sll_db,
        null_depths_db,
    })
}

/// Which excitation parameters the optimizer controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisVariables {
    AmplitudesOnly,
    AmplitudesAndPhases,
}

/// Side-lobe minimization problem with optional null targets.
///
/// Decision vector layout: amplitudes first, then phases when enabled. With
/// `symmetric` set, each block holds only the first `ceil(N / 2)` elements and
/// the rest are mirrored.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisProblem<T> {
    pub geometry: ArrayGeometry<T>,
    pub variables: SynthesisVariables,
    pub amplitude_bounds: (T, T),
    pub phase_bounds_deg: (T, T),
    pub symmetric: bool,
    /// `(theta_deg, target_db)`: the pattern should sit at or below target.
    pub null_targets: Vec<(T, T)>,
    pub null_weight: T,
    pub resolution_deg: T,
}

impl<T: Scalar> SynthesisProblem<T> {
    /// Amplitude taper in [1, 2.4], phases (when enabled) in [90, 180]
    /// degrees, no null targets, unit null weight, 0.1 degree grid.
    pub fn new(geometry: ArrayGeometry<T>) -> Self {
        Self {
            geometry,
            variables: SynthesisVariables::AmplitudesOnly,
            amplitude_bounds: (T::one(), T::of(2.4)),
            phase_bounds_deg: (T::of(90.0), T::of(180.0)),
            symmetric: false,
            null_targets: Vec::new(),
            null_weight: T::one(),
            resolution_deg: T::of(DEFAULT_RESOLUTION_DEG),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (alo, ahi) = self.amplitude_bounds;
        if !(alo > T::zero() && alo < ahi && ahi.is_finite()) {
            return Err(Error::InvalidArray(format!(
                "amplitude bounds must satisfy 0 < lower < upper, got [{alo}, {ahi}]"
            )));
        }
        if self.variables == SynthesisVariables::AmplitudesAndPhases {
            let (plo, phi) = self.phase_bounds_deg;
            if !(plo < phi && plo.is_finite() && phi.is_finite()) {
                return Err(Error::InvalidArray(format!(
                    "phase bounds must satisfy lower < upper, got [{plo}, {phi}]"
                )));
            }
        }
        if let Some(&(theta, _)) = self
            .null_targets
            .iter()
            .find(|(theta, db)| !(*theta > T::zero() && *theta < T::of(180.0)) || !db.is_finite())
        {
            return Err(Error::InvalidArray(format!(
                "null target angle {theta} must lie strictly between 0 and 180 degrees"
            )));
        }
        if !(self.null_weight >= T::zero()) {
            return Err(Error::InvalidArray(
                "null weight must be non-negative".into(),
            ));
        }
        grid_steps(self.resolution_deg.to_f64_lossy())
            .ok_or(Error::InvalidResolution(self.resolution_deg.to_f64_lossy()))?;
        Ok(())
    }

    fn block_len(&self) -> usize {
        if self.symmetric {
            self.geometry.n_elements.div_ceil(2)
        } else {
            self.geometry.n_elements
        }
    }

    /// Length of the decision vector.
    pub fn dimension(&self) -> usize {
        match self.variables {
            SynthesisVariables::AmplitudesOnly => self.block_len(),
            SynthesisVariables::AmplitudesAndPhases => 2 * self.block_len(),
        }
    }

    pub fn search_space(&self) -> Result<SearchSpace<T>> {
        self.validate()?;
        let k = self.block_len();
        let (alo, ahi) = self.amplitude_bounds;
        let mut lower = vec![alo; k];
        let mut upper = vec![ahi; k];
        if self.variables == SynthesisVariables::AmplitudesAndPhases {
            let (plo, phi) = self.phase_bounds_deg;
            lower.extend(std::iter::repeat_n(plo, k));
            upper.extend(std::iter::repeat_n(phi, k));
        }
        SearchSpace::new(lower, upper)
    }

    fn expand(&self, block: &[T]) -> Vec<T> {
        if !self.symmetric {
            return block.to_vec();
        }
        let n = self.geometry.n_elements;
        let mut full = block.to_vec();
        full.extend(block[..n / 2].iter().rev());
        full
    }

    pub fn decode(&self, x: &[T]) -> Result<Excitation<T>> {
        let expected = self.dimension();
        if x.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: x.len(),
            });
        }
        let k = self.block_len();
        let amplitudes = self.expand(&x[..k]);
        let phases = match self.variables {
            SynthesisVariables::AmplitudesOnly => vec![T::zero(); self.geometry.n_elements],
            SynthesisVariables::AmplitudesAndPhases => self.expand(&x[k..]),
        };
        Excitation::new(amplitudes, phases)
    }

    pub fn pattern(&self, x: &[T]) -> Result<RadiationPattern<T>> {
        compute_pattern(&self.geometry, &self.decode(x)?, self.resolution_deg)
    }

    pub fn metrics(&self, x: &[T]) -> Result<PatternMetrics<T>> {
        let queries: Vec<T> = self.null_targets.iter().map(|&(theta, _)| theta).collect();
        extract_metrics(&self.pattern(x)?, &queries)
    }

    /// Max side-lobe level plus the weighted hinge on null-target violations.
    pub fn fitness(&self, x: &[T]) -> Result<T> {
        let metrics = self.metrics(x)?;
        if self.null_weight == T::zero() {
            return Ok(metrics.max_sll_db);
        }
        let violation: T = metrics
            .null_depths_db
            .iter()
            .zip(&self.null_targets)
            .map(|(&(_, level), &(_, target))| (level - target).max(T::zero()))
            .sum();
        Ok(metrics.max_sll_db + self.null_weight * violation)
    }

    /// Fitness as an optimizer objective; undecodable points score NaN.
    pub fn objective(&self) -> impl Fn(&[T]) -> T + '_ {
        move |x: &[T]| self.fitness(x).unwrap_or_else(|_| T::nan())
    }
}

pub fn synthesis_fitness<T: Scalar>(problem: &SynthesisProblem<T>, x: &[T]) -> Result<T> {
    problem.fitness(x)
}
