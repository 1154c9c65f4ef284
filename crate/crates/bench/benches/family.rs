use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use reductor_bench::workloads;
use reductor_core::catalog::running_example;
use reductor_core::family::{
    canonical_family, check_reductor, enumerate_normalized, enumerate_per_ray, maximal_shift_family,
};

fn families(c: &mut Criterion) {
    for (name, fan) in workloads() {
        c.bench_function(&format!("canonical {name}"), |b| b.iter(|| canonical_family(black_box(&fan))));
        c.bench_function(&format!("maxshift {name}"), |b| b.iter(|| maximal_shift_family(black_box(&fan))));
    }
}

fn enumeration(c: &mut Criterion) {
    let fan = running_example();
    c.bench_function("per-ray tables 1/8(1,2,5)", |b| {
        b.iter(|| (0..fan.rays().len()).map(|r| enumerate_per_ray(&fan, r).rows.len()).sum::<usize>())
    });
    c.bench_function("stream all sets 1/8(1,2,5)", |b| b.iter(|| enumerate_normalized(&fan).count()));
    let sets: Vec<_> = enumerate_normalized(&fan).take(64).collect();
    c.bench_function("check 64 sets 1/8(1,2,5)", |b| {
        b.iter(|| sets.iter().filter(|s| check_reductor(&fan, s).passed()).count())
    });
}

criterion_group!(benches, families, enumeration);
criterion_main!(benches);
