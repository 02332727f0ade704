use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pointed_tensor::{cg_table, oracle_sweep, validate_params, Execution};

fn strategies() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn bench_table(c: &mut Criterion) {
    let params = validate_params(5, 1, 1).unwrap();
    let mut group = c.benchmark_group("cg_table n=5 d=25");
    for (name, exec) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| cg_table(black_box(&params), exec))
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let params = validate_params(3, 1, 1).unwrap();
    let mut group = c.benchmark_group("oracle_sweep n=3 d=9");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| oracle_sweep(black_box(&params), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_table, bench_oracle);
criterion_main!(benches);
