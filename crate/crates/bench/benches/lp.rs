use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diskscale_core::lp::{solve_lp, HalfSpace, LpProblem, DEFAULT_LP_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Feasible random LP: every constraint holds at the origin.
fn random_lp(dim: usize, m: usize, seed: u64) -> LpProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let constraints = (0..m)
        .map(|_| HalfSpace::new((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect(), rng.random_range(0.1..2.0)))
        .collect();
    LpProblem {
        lower: vec![-10.0; dim],
        upper: vec![10.0; dim],
        constraints,
        objective: (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect(),
    }
}

fn seidel(c: &mut Criterion) {
    let mut g = c.benchmark_group("seidel_lp");
    for dim in [2, 3, 5] {
        for m in [50, 400] {
            let lp = random_lp(dim, m, DEFAULT_LP_SEED);
            g.bench_with_input(BenchmarkId::new(format!("d{dim}"), m), &lp, |b, lp| {
                b.iter(|| solve_lp(lp, DEFAULT_LP_SEED).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, seidel);
criterion_main!(benches);
