use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relsim_bench::{interleaved_pairs, line_events};

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition");
    group.sample_size(10);
    for n in [1_000usize, 10_000, 100_000] {
        let base = line_events(n);
        let (a, b) = interleaved_pairs(&base);
        group.bench_with_input(BenchmarkId::new("join", n), &n, |bench, _| bench.iter(|| a.join(&b).unwrap()));
        group.bench_with_input(BenchmarkId::new("meet", n), &n, |bench, _| bench.iter(|| a.meet(&b).unwrap()));
        group.bench_with_input(BenchmarkId::new("finer_than", n), &n, |bench, _| bench.iter(|| a.finer_than(&b).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, lattice);
criterion_main!(benches);
