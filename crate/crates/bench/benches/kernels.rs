//! Benchmarks for the three kernels that dominate runtime: Smith normal
//! form, nerve tabulation, and the weight-piece homology pipeline.

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repbar::homology::normalized_chains;
use repbar::matrix::{smith_normal_form, IntMat, PivotStrategy};
use repbar::monoid::AffineMonoid;
use repbar::nerves::{dihedral_nerve, WindowSpec};

fn nat() -> AffineMonoid {
    AffineMonoid::new(1, vec![vec![1]], Some(vec![vec![1]])).unwrap()
}

fn bench_snf(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mats: Vec<IntMat> = (0..16)
        .map(|_| {
            let rows: Vec<Vec<i64>> =
                (0..8).map(|_| (0..8).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            IntMat::from_rows_i64(&rows)
        })
        .collect();
    c.bench_function("snf_8x8_batch16", |b| {
        b.iter(|| {
            for m in &mats {
                std::hint::black_box(smith_normal_form(m, PivotStrategy::MinAbs));
            }
        })
    });
}

fn bench_nerve(c: &mut Criterion) {
    let m = nat();
    c.bench_function("dihedral_nerve_weight3_depth9", |b| {
        b.iter(|| {
            let x = dihedral_nerve(&m, 9, &WindowSpec::Weights(vec![vec![3]])).unwrap();
            std::hint::black_box(x)
        })
    });
}

fn bench_weight_homology(c: &mut Criterion) {
    let m = nat();
    let x = dihedral_nerve(&m, 9, &WindowSpec::Weights(vec![vec![3]])).unwrap();
    c.bench_function("weight3_homology_table", |b| {
        b.iter(|| {
            let (chains, _) = normalized_chains(&x, false).unwrap();
            std::hint::black_box(chains.homology_table(4).unwrap())
        })
    });
}

criterion_group!(benches, bench_snf, bench_nerve, bench_weight_homology);
criterion_main!(benches);
