use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stochastics::RngStream;

/// Axis-aligned box of per-dimension bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace<T> {
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Scalar> SearchSpace<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::BoundLengthMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidConfig(
                "search space has no dimensions".into(),
            ));
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::DegenerateSpace {
                    dim,
                    lower: lo.to_f64_lossy(),
                    upper: hi.to_f64_lossy(),
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same `[lower, upper]` interval in each of `dim` dimensions.
    pub fn uniform(dim: usize, lower: T, upper: T) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn width(&self, dim: usize) -> T {
        self.upper[dim] - self.lower[dim]
    }

    pub fn clamp(&self, dim: usize, value: T) -> T {
        value.max(self.lower[dim]).min(self.upper[dim])
    }

    pub fn clamp_all(&self, position: &mut [T]) {
        for (dim, v) in position.iter_mut().enumerate() {
            *v = self.clamp(dim, *v);
        }
    }

    pub fn contains(&self, position: &[T]) -> bool {
        position.len() == self.dim()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| lo <= x && x <= hi)
    }

    /// Uniform point, one draw per dimension in dimension order.
    pub fn sample(&self, stream: &mut RngStream) -> Vec<T> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| stream.uniform_in(lo, hi))
            .collect()
    }
}

/// Population member: a position and its cached objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Ant<T> {
    pub position: Vec<T>,
    pub fitness: T,
}

impl<T: Scalar> Ant<T> {
    pub fn new(position: Vec<T>, fitness: T) -> Self {
        Self { position, fitness }
    }
}

/// Index of the lowest fitness, first occurrence on ties.
pub(crate) fn best_index<T: Scalar>(ants: &[Ant<T>]) -> usize {
    let mut best = 0;
    for (i, ant) in ants.iter().enumerate().skip(1) {
        if ant.fitness < ants[best].fitness {
            best = i;
        }
    }
    best
}
