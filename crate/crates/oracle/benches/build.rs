use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dlop_core::equilibrium::ModelParams;
use dlop_oracle::{build_recurrence, zeros, LatticeMeasure};

fn recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for n in [16u32, 32, 64] {
        let measure = LatticeMeasure::new(ModelParams::diagonal(0.0, 4.0, n).unwrap());
        group.bench_with_input(BenchmarkId::new("recurrence", n), &measure, |b, m| {
            b.iter(|| build_recurrence(m, n).unwrap())
        });
        let table = build_recurrence(&measure, n).unwrap();
        group.bench_with_input(BenchmarkId::new("zeros", n), &table, |b, t| {
            b.iter(|| zeros(t, n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, recurrence);
criterion_main!(benches);
