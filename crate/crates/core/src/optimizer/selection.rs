use crate::scalar::{fitness_cmp, Scalar};
use crate::stochastics::RngStream;

/// Rank-based roulette wheel for minimization.
///
/// The best ant (rank 1) gets weight `P`, the worst gets 1. Ants with equal
/// fitness share the mean weight of the ranks they span, and wheel slots are
/// laid out best first with ties in index order. Consumes exactly one uniform
/// draw.
pub fn natural_selection<T: Scalar>(fitnesses: &[T], stream: &mut RngStream) -> usize {
    let u = stream.next_uniform();
    select_with_uniform(fitnesses, u)
}

pub(crate) fn select_with_uniform<T: Scalar>(fitnesses: &[T], u: f64) -> usize {
    let n = fitnesses.len();
    assert!(n > 0, "selection needs at least one candidate");
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps lower index first on ties
    order.sort_by(|&a, &b| fitness_cmp(fitnesses[a], fitnesses[b]));

    let total = (n * (n + 1) / 2) as f64;
    let target = u * total;
    let mut cumulative = 0.0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && fitness_cmp(fitnesses[order[start]], fitnesses[order[end]]).is_eq() {
            end += 1;
        }
        // ranks start..end carry weights n-start down to n-end+1
        let weight = (2 * n - start - end + 1) as f64 / 2.0;
        for &idx in &order[start..end] {
            cumulative += weight;
            if target < cumulative {
                return idx;
            }
        }
        start = end;
    }
    order[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_candidate() {
        let mut stream = RngStream::new(0);
        for _ in 0..100 {
            assert_eq!(natural_selection(&[3.0], &mut stream), 0);
        }
    }

    #[test]
    fn consumes_one_draw() {
        let mut a = RngStream::new(4);
        let mut b = RngStream::new(4);
        natural_selection(&[1.0, 2.0, 3.0], &mut a);
        b.next_u64();
        assert_eq!(a, b);
    }

    #[test]
    fn wheel_boundaries() {
        // weights 2 (index 0) and 1 (index 1): total 3
        let f = [0.0, 1.0];
        assert_eq!(select_with_uniform(&f, 0.0), 0);
        assert_eq!(select_with_uniform(&f, 0.66), 0);
        assert_eq!(select_with_uniform(&f, 2.0 / 3.0 + 1e-9), 1);
        assert_eq!(select_with_uniform(&f, 0.999_999), 1);
        // reversed fitness flips the ranking
        assert_eq!(select_with_uniform(&[1.0, 0.0], 0.1), 1);
    }

    #[test]
    fn ties_share_weight_in_index_order() {
        // three-way tie: weight 2 each, total 6
        assert_eq!(select_with_uniform(&[5.0, 5.0, 5.0], 0.0), 0);
        assert_eq!(select_with_uniform(&[5.0, 5.0, 5.0], 0.34), 1);
        assert_eq!(select_with_uniform(&[5.0, 5.0, 5.0], 0.99), 2);
        // [1, 0, 0]: tied best pair shares (3+2)/2, worst keeps 1
        assert_eq!(select_with_uniform(&[1.0, 0.0, 0.0], 0.40), 1);
        assert_eq!(select_with_uniform(&[1.0, 0.0, 0.0], 0.42), 2);
        assert_eq!(select_with_uniform(&[1.0, 0.0, 0.0], 0.84), 0);
    }

    #[test]
    fn two_ant_probabilities() {
        let mut stream = RngStream::new(12);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| natural_selection(&[0.0, 1.0], &mut stream) == 0)
            .count();
        let p = hits as f64 / n as f64;
        // 5 sigma for p = 2/3 is about 0.0075
        assert!((p - 2.0 / 3.0).abs() < 0.0075, "p = {p}");
    }

    #[test]
    fn equal_fitness_is_uniform_chi_squared() {
        let mut stream = RngStream::new(99);
        let n = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..n {
            counts[natural_selection(&[5.0, 5.0, 5.0], &mut stream)] += 1;
        }
        let expected = [n as f64 / 3.0; 3];
        let chi2: f64 = counts
            .iter()
            .zip(expected)
            .map(|(&o, e)| (o as f64 - e).powi(2) / e)
            .sum();
        // chi-squared, 2 dof, p = 0.001
        assert!(chi2 < 13.82, "chi2 = {chi2}, counts {counts:?}");
    }

    #[test]
    fn nan_ranks_last() {
        assert_eq!(select_with_uniform(&[f64::NAN, 1.0], 0.0), 1);
    }
}
