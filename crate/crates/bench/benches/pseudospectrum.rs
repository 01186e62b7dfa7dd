use criterion::{criterion_group, criterion_main, Criterion};
use fsq_bench::jordan;
use fsq_core::finite_section::{pseudospectrum, resolvent_s_min, GridSpec};
use fsq_core::C64;
use std::hint::black_box;

fn sweep(c: &mut Criterion) {
    let a = jordan(64);
    c.bench_function("s_min jordan 64", |b| {
        b.iter(|| resolvent_s_min(black_box(&a), C64::new(0.3, 0.2)).unwrap())
    });
    let grid = GridSpec::square(C64::new(0.0, 0.0), 1.0, 0.1);
    let mut group = c.benchmark_group("pseudospectrum");
    group.sample_size(10);
    group.bench_function("jordan 64, 21x21 grid", |b| {
        b.iter(|| pseudospectrum(black_box(&a), 0.05, &grid).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
