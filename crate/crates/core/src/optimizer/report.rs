use crate::scalar::Scalar;

/// Outcome of a single seeded run.
///
/// `convergence` holds `(iteration, best_so_far)` with iteration 0 for the
/// initial population, so a run of `T` iterations has `T + 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport<T> {
    pub elite_position: Vec<T>,
    pub elite_fitness: T,
    pub convergence: Vec<(usize, T)>,
    pub evaluations: usize,
    /// Evaluations whose objective value was NaN and was scored as +inf.
    pub nan_evaluations: usize,
}

impl<T: Scalar> RunReport<T> {
    /// Best fitness of the initial population.
    pub fn initial_best(&self) -> T {
        self.convergence
            .first()
            .map_or(self.elite_fitness, |&(_, f)| f)
    }
}

/// Counts objective calls and scores NaN as +inf.
pub(crate) struct Evaluator<F> {
    objective: F,
    pub evaluations: usize,
    pub nan_evaluations: usize,
}

impl<F> Evaluator<F> {
    pub fn new(objective: F) -> Self {
        Self {
            objective,
            evaluations: 0,
            nan_evaluations: 0,
        }
    }

    pub fn eval<T: Scalar>(&mut self, x: &[T]) -> T
    where
        F: FnMut(&[T]) -> T,
    {
        self.evaluations += 1;
        let value = (self.objective)(x);
        if value.is_nan() {
            self.nan_evaluations += 1;
            T::infinity()
        } else {
            value
        }
    }
}
