use criterion::{criterion_group, criterion_main, Criterion};
use relsim_core::suite::run_suite;
use relsim_core::SuiteConfig;

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for id in ["subgroup-dichotomy", "poincare-nogo", "malament", "hogarth"] {
        let config = SuiteConfig { selection: vec![id.to_string()], ..SuiteConfig::default() };
        group.bench_function(id, |b| b.iter(|| run_suite(&config).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
