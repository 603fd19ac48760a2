//! Seedable random source and the cumulative-sum random walk used by every
//! optimizer in the crate.
//!
//! Everything here is bit-exact: a stream is a SplitMix64 state, uniforms use
//! the top 53 bits of each output, and a walk step is `+1` iff the uniform is
//! strictly greater than one half.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One SplitMix64 output mix.
#[inline]
pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Single-owner SplitMix64 stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    state: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream number `index` derived from `master`.
    ///
    /// The seed is `mix(master + index * gamma)`, so streams for different
    /// indices never share a state trajectory start.
    pub fn derive(master: u64, index: u64) -> Self {
        Self::new(splitmix64_mix(
            master.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)),
        ))
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        splitmix64_mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of mantissa.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lower, upper]`, narrowed to `T` and clamped so rounding in
    /// a narrow scalar can never leave the interval.
    #[inline]
    pub fn uniform_in<T: Scalar>(&mut self, lower: T, upper: T) -> T {
        let u = T::of(self.next_uniform());
        (lower + u * (upper - lower)).max(lower).min(upper)
    }

    /// Uniform index in `0..n`. Consumes one draw.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_uniform() * n as f64) as usize).min(n - 1)
    }

    /// One walk step: `+1` when the uniform exceeds 0.5, otherwise `-1`.
    #[inline]
    pub fn bernoulli_step(&mut self) -> i64 {
        step_from_uniform(self.next_uniform())
    }
}

/// Step rule applied to a single uniform draw. Ties at exactly 0.5 go down.
#[inline]
pub fn step_from_uniform(u: f64) -> i64 {
    if u > 0.5 {
        1
    } else {
        -1
    }
}

/// Cumulative-sum walk `[0, c1, ..., cn]` with unit steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomWalk {
    values: Vec<i64>,
}

impl RandomWalk {
    /// Builds a walk from explicit uniform draws, one step per draw.
    pub fn from_uniforms(draws: impl IntoIterator<Item = f64>) -> Self {
        let mut values = vec![0i64];
        let mut position = 0i64;
        for u in draws {
            position += step_from_uniform(u);
            values.push(position);
        }
        Self { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> i64 {
        *self.values.last().expect("walk always holds the origin")
    }
}

/// Walk of `n_steps` unit steps. Consumes exactly `n_steps` draws.
pub fn random_walk(n_steps: usize, stream: &mut RngStream) -> RandomWalk {
    RandomWalk::from_uniforms((0..n_steps).map(|_| stream.next_uniform()))
}

/// Min-max maps a walk onto `[target_lo, target_hi]`.
///
/// A constant walk maps every entry to the interval midpoint.
pub fn scale_walk<T: Scalar>(walk: &RandomWalk, target_lo: T, target_hi: T) -> Result<Vec<T>> {
    check_interval(target_lo, target_hi)?;
    let values = walk.values();
    let min = *values.iter().min().expect("non-empty walk");
    let max = *values.iter().max().expect("non-empty walk");
    Ok(values
        .iter()
        .map(|&x| scale_value(x, min, max, target_lo, target_hi))
        .collect())
}

/// Scaled value of entry `index` of a fresh `n_steps` walk.
///
/// Equivalent to `scale_walk(&random_walk(n_steps, stream), lo, hi)?[index]`
/// (same draws, same arithmetic) without materializing the walk.
pub fn scaled_walk_entry<T: Scalar>(
    stream: &mut RngStream,
    n_steps: usize,
    index: usize,
    target_lo: T,
    target_hi: T,
) -> Result<T> {
    check_interval(target_lo, target_hi)?;
    debug_assert!(index <= n_steps);
    let (mut position, mut min, mut max, mut at_index) = (0i64, 0i64, 0i64, 0i64);
    for step in 1..=n_steps {
        position += stream.bernoulli_step();
        min = min.min(position);
        max = max.max(position);
        if step == index {
            at_index = position;
        }
    }
    Ok(scale_value(at_index, min, max, target_lo, target_hi))
}

#[inline]
fn scale_value<T: Scalar>(x: i64, min: i64, max: i64, lo: T, hi: T) -> T {
    if max == min {
        return (lo + hi) / T::of(2.0);
    }
    let fraction = T::of((x - min) as f64) / T::of((max - min) as f64);
    (fraction * (hi - lo) + lo).max(lo).min(hi)
}

fn check_interval<T: Scalar>(lo: T, hi: T) -> Result<()> {
    // NaN bounds fail here too
    if lo <= hi {
        Ok(())
    } else {
        Err(Error::ReversedBounds {
            lower: lo.to_f64_lossy(),
            upper: hi.to_f64_lossy(),
        })
    }
}
