//! Hill-construction volume rate and the boundary-shrinking schedule built on it.
//!
//! Both hill shapes have a volume rate proportional to `1 / t`. The schedule
//! uses the rate only through its ratio to the rate at the first iteration,
//! evaluated on a warped clock `tau(t) = 1 + (t - 1) * kappa` chosen so the
//! shrink factor lands on `s_min` at the last iteration.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HillShape<T> {
    Pyramid { base_area: T, height: T },
    Cone { radius: T, height: T },
}

impl<T: Scalar> HillShape<T> {
    pub fn pyramid(base_area: T, height: T) -> Result<Self> {
        let shape = Self::Pyramid { base_area, height };
        shape.validate()?;
        Ok(shape)
    }

    pub fn cone(radius: T, height: T) -> Result<Self> {
        let shape = Self::Cone { radius, height };
        shape.validate()?;
        Ok(shape)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Pyramid { base_area, height } => base_area > T::zero() && height > T::zero(),
            Self::Cone { radius, height } => radius > T::zero() && height > T::zero(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NonPositiveShape)
        }
    }

    /// Volume built per unit time after construction time `t`.
    pub fn volume_rate(&self, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(Error::NonPositiveTime(t.to_f64_lossy()));
        }
        let third = T::one() / T::of(3.0);
        Ok(match *self {
            Self::Pyramid { base_area, height } => third * base_area * height / t,
            Self::Cone { radius, height } => third * T::PI() * radius * radius * height / t,
        })
    }
}

impl<T: Scalar> Default for HillShape<T> {
    fn default() -> Self {
        Self::Pyramid {
            base_area: T::of(3.0),
            height: T::one(),
        }
    }
}

pub const DEFAULT_S_MIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionSchedule<T> {
    shape: HillShape<T>,
    s_min: T,
    total_iterations: usize,
}

impl<T: Scalar> ConstructionSchedule<T> {
    pub fn new(shape: HillShape<T>, s_min: T, total_iterations: usize) -> Result<Self> {
        shape.validate()?;
        if !(s_min > T::zero() && s_min < T::one()) {
            return Err(Error::InvalidShrink(s_min.to_f64_lossy()));
        }
        if total_iterations == 0 {
            return Err(Error::InvalidConfig(
                "schedule needs at least one iteration".into(),
            ));
        }
        Ok(Self {
            shape,
            s_min,
            total_iterations,
        })
    }

    pub fn shape(&self) -> &HillShape<T> {
        &self.shape
    }

    pub fn s_min(&self) -> T {
        self.s_min
    }

    pub fn total_iterations(&self) -> usize {
        self.total_iterations
    }

    fn kappa(&self) -> T {
        if self.total_iterations == 1 {
            T::zero()
        } else {
            (T::one() / self.s_min - T::one()) / T::of_usize(self.total_iterations - 1)
        }
    }

    /// Warped construction time for iteration `t` (1-based).
    pub fn construction_time(&self, t: usize) -> T {
        T::one() + T::of_usize(t - 1) * self.kappa()
    }

    /// Fraction of the search width kept at iteration `t`; 1 at `t = 1`.
    pub fn shrink_factor(&self, t: usize) -> Result<T> {
        if t == 0 || t > self.total_iterations {
            return Err(Error::IterationOutOfRange {
                t,
                total: self.total_iterations,
            });
        }
        if t == 1 {
            return Ok(T::one());
        }
        let now = self.shape.volume_rate(self.construction_time(t))?;
        let start = self.shape.volume_rate(self.construction_time(1))?;
        Ok(now / start)
    }
}
