use anthill::*;

/// Wraps an objective and records every call in order.
struct Logged {
    calls: Vec<(Vec<f64>, f64)>,
}

impl Logged {
    fn run(
        algorithm: Algorithm,
        id: BenchmarkId,
        dim: usize,
        pop: usize,
        iters: usize,
        seed: u64,
    ) -> (Self, RunReport64, OptimizerConfig64) {
        let bench = Benchmark::new(id, dim);
        let config = OptimizerConfig64::new(bench.space().unwrap(), pop, iters, seed);
        let mut inner = bench.objective::<f64>(seed);
        let mut calls = Vec::new();
        let report = run(
            algorithm,
            |x: &[f64]| {
                let f = inner(x);
                calls.push((x.to_vec(), f));
                f
            },
            &config,
        )
        .unwrap();
        (Self { calls }, report, config)
    }

    fn min_of_first(&self, n: usize) -> f64 {
        self.calls[..n]
            .iter()
            .map(|&(_, f)| f)
            .fold(f64::INFINITY, f64::min)
    }
}

const ALGORITHMS: [Algorithm; 4] = [
    Algorithm::Ahcoa,
    Algorithm::Alo,
    Algorithm::RandomSearch,
    Algorithm::HillClimb,
];

#[test]
fn elite_is_exact_minimum_of_evaluation_log() {
    for algorithm in ALGORITHMS {
        for id in [BenchmarkId::F1, BenchmarkId::F5] {
            for seed in [1, 2, 3, 4, 5, 42] {
                let (log, report, config) = Logged::run(algorithm, id, 2, 5, 50, seed);
                assert_eq!(log.calls.len(), report.evaluations);
                assert_eq!(report.evaluations, config.budget(), "{algorithm}");
                let min = log.min_of_first(log.calls.len());
                assert_eq!(
                    report.elite_fitness.to_bits(),
                    min.to_bits(),
                    "{algorithm} {id} {seed}"
                );
                let (position, _) = log.calls.iter().find(|(_, f)| *f == min).unwrap();
                assert_eq!(&report.elite_position, position, "{algorithm} {id} {seed}");
            }
        }
    }
}

#[test]
fn convergence_tracks_running_minimum() {
    for algorithm in ALGORITHMS {
        let (log, report, config) = Logged::run(algorithm, BenchmarkId::F1, 3, 6, 30, 9);
        assert_eq!(report.convergence.len(), config.iterations + 1);
        for (k, &(iteration, best)) in report.convergence.iter().enumerate() {
            assert_eq!(iteration, k);
            let seen = config.population * (k + 1);
            assert_eq!(best, log.min_of_first(seen), "{algorithm} at {k}");
        }
    }
}

#[test]
fn every_evaluation_is_in_bounds() {
    for algorithm in ALGORITHMS {
        for id in BenchmarkId::ALL {
            let (log, _, config) = Logged::run(algorithm, id, 4, 5, 20, 3);
            assert!(
                log.calls.iter().all(|(x, _)| config.space.contains(x)),
                "{algorithm} left the box on {id}"
            );
        }
    }
}

#[test]
fn reruns_are_bit_identical() {
    for algorithm in ALGORITHMS {
        let (a, ra, _) = Logged::run(algorithm, BenchmarkId::F7, 3, 5, 20, 11);
        let (b, rb, _) = Logged::run(algorithm, BenchmarkId::F7, 3, 5, 20, 11);
        assert_eq!(ra, rb);
        let bits = |log: &Logged| -> Vec<u64> {
            log.calls
                .iter()
                .flat_map(|(x, f)| {
                    x.iter()
                        .chain(std::iter::once(f))
                        .map(|v| v.to_bits())
                        .collect::<Vec<_>>()
                })
                .collect()
        };
        assert_eq!(bits(&a), bits(&b));
        let (_, rc, _) = Logged::run(algorithm, BenchmarkId::F7, 3, 5, 20, 12);
        assert_ne!(
            ra.convergence, rc.convergence,
            "{algorithm} ignores its seed"
        );
    }
}

#[test]
fn random_search_solves_one_dimensional_sphere() {
    let bench = Benchmark::new(BenchmarkId::F1, 1);
    let config = OptimizerConfig64::new(bench.space().unwrap(), 100, 99, 7);
    assert_eq!(config.budget(), 10_000);
    let report = run_random_search(bench.objective(0), &config).unwrap();
    assert!(report.elite_fitness < 1.0, "{}", report.elite_fitness);
}

#[test]
fn optimizers_beat_random_search_on_sphere() {
    let bench = Benchmark::new(BenchmarkId::F1, 10);
    let config = OptimizerConfig64::new(bench.space().unwrap(), 20, 100, 4);
    let random = run_random_search(bench.objective(0), &config)
        .unwrap()
        .elite_fitness;
    for algorithm in [Algorithm::Ahcoa, Algorithm::Alo] {
        let best = run(algorithm, bench.objective(0), &config)
            .unwrap()
            .elite_fitness;
        assert!(best < random, "{algorithm}: {best} vs random {random}");
    }
}
