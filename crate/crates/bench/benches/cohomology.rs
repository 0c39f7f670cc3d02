use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use vortexline::cohomology::{predicted_volume, vortex_class, Coeff};

fn volumes(c: &mut Criterion) {
    let mut group = c.benchmark_group("predicted_volume");
    for r in [2u32, 4, 6] {
        let ta = Coeff::pi_multiple(BigRational::new((2 * r as i64 + 3).into(), 2.into()));
        group.bench_with_input(BenchmarkId::new("g4", r), &r, |b, &r| {
            b.iter(|| predicted_volume(black_box(&ta), r, 4))
        });
        group.bench_with_input(BenchmarkId::new("g4_symbolic", r), &r, |b, &r| {
            b.iter(|| predicted_volume(black_box(&Coeff::t()), r, 4))
        });
    }
    group.finish();
}

fn class_power(c: &mut Criterion) {
    let class = vortex_class(&Coeff::t(), 6, 4);
    c.bench_function("vortex_class_pow_r6_g4", |b| {
        b.iter(|| black_box(&class).pow(6))
    });
}

criterion_group!(benches, volumes, class_power);
criterion_main!(benches);
