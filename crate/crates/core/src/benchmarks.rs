//! The seven unimodal test objectives (F1 to F7).
//!
//! | id | function | range |
//! |----|----------|-------|
//! | F1 | `sum x_i^2` | [-100, 100] |
//! | F2 | `sum |x_i| + prod |x_i|` | [-10, 10] |
//! | F3 | `sum_i (sum_{j<=i} x_j)^2` | [-100, 100] |
//! | F4 | `max_i |x_i|` | [-100, 100] |
//! | F5 | Rosenbrock | [-30, 30] |
//! | F6 | `sum floor(x_i + 0.5)^2` | [-100, 100] |
//! | F7 | `sum i * x_i^4 + uniform[0, 1)` | [-1.28, 1.28] |
//!
//! Every function has a minimum value of 0 (F7 up to its noise term).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::optimizer::SearchSpace;
use crate::scalar::Scalar;
use crate::stochastics::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchmarkId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 7] = [
        BenchmarkId::F1,
        BenchmarkId::F2,
        BenchmarkId::F3,
        BenchmarkId::F4,
        BenchmarkId::F5,
        BenchmarkId::F6,
        BenchmarkId::F7,
    ];

    /// Symmetric search half-width `r` for the range `[-r, r]`.
    pub fn half_range(self) -> f64 {
        match self {
            Self::F1 | Self::F3 | Self::F4 | Self::F6 => 100.0,
            Self::F2 => 10.0,
            Self::F5 => 30.0,
            Self::F7 => 1.28,
        }
    }

    pub fn f_min(self) -> f64 {
        0.0
    }

    pub fn is_noisy(self) -> bool {
        self == Self::F7
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::F1 => "F1",
            Self::F2 => "F2",
            Self::F3 => "F3",
            Self::F4 => "F4",
            Self::F5 => "F5",
            Self::F6 => "F6",
            Self::F7 => "F7",
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

/// Value of a benchmark at a point, plus whether the point was out of range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub value: T,
    pub out_of_range: bool,
}

/// Evaluates `id` at `x`. F7 draws its noise term from `stream`.
pub fn evaluate<T: Scalar>(
    id: BenchmarkId,
    x: &[T],
    stream: Option<&mut RngStream>,
) -> Result<Evaluation<T>> {
    let r = T::of(id.half_range());
    let out_of_range = x.iter().any(|&v| !(v >= -r && v <= r));
    let value = match id {
        BenchmarkId::F1 => x.iter().map(|&v| v * v).sum(),
        BenchmarkId::F2 => {
            let sum: T = x.iter().map(|v| v.abs()).sum();
            let product = x.iter().fold(T::one(), |acc, v| acc * v.abs());
            sum + product
        }
        BenchmarkId::F3 => {
            let mut prefix = T::zero();
            x.iter()
                .map(|&v| {
                    prefix = prefix + v;
                    prefix * prefix
                })
                .sum()
        }
        BenchmarkId::F4 => x.iter().fold(T::zero(), |acc, v| acc.max(v.abs())),
        BenchmarkId::F5 => {
            let hundred = T::of(100.0);
            x.windows(2)
                .map(|w| {
                    let a = w[1] - w[0] * w[0];
                    let b = w[0] - T::one();
                    hundred * a * a + b * b
                })
                .sum()
        }
        BenchmarkId::F6 => {
            let half = T::of(0.5);
            x.iter()
                .map(|&v| {
                    let step = (v + half).floor();
                    step * step
                })
                .sum()
        }
        BenchmarkId::F7 => {
            let stream = stream.ok_or(Error::MissingStream("F7"))?;
            let quartic: T = x
                .iter()
                .enumerate()
                .map(|(i, &v)| T::of_usize(i + 1) * v.powi(4))
                .sum();
            quartic + T::of(stream.next_uniform())
        }
    };
    Ok(Evaluation {
        value,
        out_of_range,
    })
}

/// A benchmark instance at a fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Benchmark {
    pub id: BenchmarkId,
    pub dimension: usize,
}

impl Benchmark {
    pub fn new(id: BenchmarkId, dimension: usize) -> Self {
        Self { id, dimension }
    }

    pub fn space<T: Scalar>(&self) -> Result<SearchSpace<T>> {
        let r = T::of(self.id.half_range());
        SearchSpace::uniform(self.dimension, -r, r)
    }

    /// Closure suitable for the optimizers. F7 noise comes from `noise_seed`,
    /// a stream kept separate from the optimizer's own.
    pub fn objective<T: Scalar>(&self, noise_seed: u64) -> impl FnMut(&[T]) -> T {
        let id = self.id;
        let mut noise = RngStream::new(noise_seed);
        move |x: &[T]| {
            evaluate(id, x, Some(&mut noise))
                .expect("stream always supplied")
                .value
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(id: BenchmarkId, x: &[f64]) -> f64 {
        evaluate(id, x, None).unwrap().value
    }

    #[test]
    fn table_examples() {
        assert_eq!(eval(BenchmarkId::F1, &[0.0; 30]), 0.0);
        assert_eq!(eval(BenchmarkId::F1, &[1.0; 30]), 30.0);
        assert_eq!(eval(BenchmarkId::F5, &[1.0; 7]), 0.0);
        assert_eq!(eval(BenchmarkId::F3, &[1.0, 2.0]), 10.0);
        assert_eq!(eval(BenchmarkId::F4, &[-3.0, 2.0, 0.5]), 3.0);
        assert_eq!(eval(BenchmarkId::F6, &[0.4; 10]), 0.0);
    }

    #[test]
    fn absolute_value_forms() {
        // |-1| + |2| + |-1 * 2|
        assert_eq!(eval(BenchmarkId::F2, &[-1.0, 2.0]), 5.0);
        assert_eq!(eval(BenchmarkId::F6, &[0.6, -0.6]), 2.0);
        assert_eq!(eval(BenchmarkId::F5, &[0.0, 0.0]), 1.0);
    }

    #[test]
    fn f7_needs_a_stream() {
        assert_eq!(
            evaluate(BenchmarkId::F7, &[0.0f64; 3], None),
            Err(Error::MissingStream("F7"))
        );
        let mut a = RngStream::new(5);
        let mut b = RngStream::new(5);
        let x = [0.5, -0.2, 1.0];
        let va = evaluate(BenchmarkId::F7, &x, Some(&mut a)).unwrap().value;
        let vb = evaluate(BenchmarkId::F7, &x, Some(&mut b)).unwrap().value;
        assert_eq!(va, vb);
        let quartic = 0.5f64.powi(4) + 2.0 * 0.2f64.powi(4) + 3.0;
        assert!(va >= quartic && va < quartic + 1.0);
    }

    #[test]
    fn out_of_range_is_flagged_not_rejected() {
        let e = evaluate(BenchmarkId::F2, &[11.0, 0.0], None).unwrap();
        assert!(e.out_of_range);
        assert_eq!(e.value, 11.0);
        assert!(
            !evaluate(BenchmarkId::F2, &[10.0, -10.0], None)
                .unwrap()
                .out_of_range
        );
    }

    #[test]
    fn registry_lookup() {
        assert_eq!("F3".parse::<BenchmarkId>().unwrap(), BenchmarkId::F3);
        assert_eq!("f7".parse::<BenchmarkId>().unwrap(), BenchmarkId::F7);
        assert!(matches!(
            "F8".parse::<BenchmarkId>(),
            Err(Error::UnknownBenchmark(_))
        ));
        for id in BenchmarkId::ALL {
            assert_eq!(id.to_string().parse::<BenchmarkId>().unwrap(), id);
        }
    }

    #[test]
    fn space_matches_range() {
        let space = Benchmark::new(BenchmarkId::F7, 4).space::<f64>().unwrap();
        assert_eq!(space.dim(), 4);
        assert_eq!(space.lower()[0], -1.28);
        assert_eq!(space.upper()[3], 1.28);
        let space = Benchmark::new(BenchmarkId::F5, 2).space::<f32>().unwrap();
        assert_eq!(space.upper()[0], 30.0);
    }
}
