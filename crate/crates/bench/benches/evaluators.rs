use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gl3sum::arith::classical_kloosterman;
use gl3sum::gl3::{s_long_fast, s_long_naive, NaiveCap};
use gl3sum::transforms::{RTable, TermTable};
use gl3sum_bench::bench_cases;

fn bench_long_element(c: &mut Criterion) {
    let cap = NaiveCap::default();
    let mut group = c.benchmark_group("long_element_sum");
    for args in bench_cases() {
        let label = format!("{}x{}", args.d1, args.d2);
        group.bench_with_input(BenchmarkId::new("naive", &label), &args, |b, args| {
            b.iter(|| s_long_naive(args, cap).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fast", &label), &args, |b, args| {
            b.iter(|| s_long_fast(args, cap).unwrap())
        });
    }
    group.finish();
}

fn bench_transform_tables(c: &mut Criterion) {
    let cap = NaiveCap::default();
    let mut group = c.benchmark_group("transform");
    for (d1, d2) in [(9u64, 27u64), (27, 27)] {
        let label = format!("{d1}x{d2}");
        group.bench_with_input(BenchmarkId::new("term_table", &label), &(d1, d2), |b, &(d1, d2)| {
            b.iter(|| TermTable::build(d1, d2, cap).unwrap())
        });
    }
    group.bench_function("r_table_125x125", |b| {
        b.iter(|| RTable::compute(125, 125, cap).unwrap())
    });
    group.finish();
}

fn bench_classical(c: &mut Criterion) {
    c.bench_function("classical_kloosterman_1e3", |b| {
        b.iter(|| classical_kloosterman(1, 1, 997))
    });
}

criterion_group!(benches, bench_long_element, bench_transform_tables, bench_classical);
criterion_main!(benches);
