use branched_core::rng::seeded;
use branched_core::sampler3d::b_vector_law;
use branched_core::verification::rejection_sample_2d;
use branched_core::{
    sample_gpolymer, sample_polymer_2d, sample_polymer_3d, BetaWeights, WeightedGraph,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_polymer_2d");
    group.sample_size(20);
    for n in [4usize, 16, 64, 256] {
        let radii = vec![1.0; n];
        let mut rng = seeded(1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &radii, |b, r| {
            b.iter(|| sample_polymer_2d(r, &mut rng).unwrap())
        });
    }
    group.finish();

    let mut rng = seeded(2);
    c.bench_function("rejection_sample_2d/4", |b| {
        b.iter(|| rejection_sample_2d(&[1.0; 4], &mut rng).unwrap())
    });

    let cycle = WeightedGraph::cycle(6, 1.0);
    let order: Vec<usize> = (0..6).collect();
    let mut rng = seeded(3);
    c.bench_function("sample_gpolymer/C6 with fill", |b| {
        b.iter(|| sample_gpolymer(&cycle, &order, &mut rng).unwrap())
    });
}

fn spatial(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_polymer_3d");
    group.sample_size(20);
    for n in [5usize, 20, 80] {
        let mut rng = seeded(4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sample_polymer_3d(n, &BetaWeights::Uniform, &mut rng).unwrap())
        });
    }
    group.finish();
    let mut rng = seeded(5);
    c.bench_function("b_vector_law/800", |b| {
        b.iter(|| b_vector_law(800, &mut rng).unwrap())
    });
}

criterion_group!(benches, planar, spatial);
criterion_main!(benches);
