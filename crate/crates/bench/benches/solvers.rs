use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qdot_bench::{cos3, ellipse};
use qdot_core::bergman::s_omega;
use qdot_core::geometry::BoundaryCurve;
use qdot_core::mps::{BoundaryCondition, MpsConfig, MpsSolver};
use qdot_core::special::{bessel_j, bessel_j_upto, bessel_zero};

fn bessel(c: &mut Criterion) {
    c.bench_function("bessel_j k=5 x=7.3", |b| b.iter(|| bessel_j(black_box(5), black_box(7.3)).unwrap()));
    c.bench_function("bessel_j_upto 48 x=3.1", |b| b.iter(|| bessel_j_upto(black_box(48), black_box(3.1))));
    c.bench_function("bessel_zero k=10 n=5", |b| b.iter(|| bessel_zero(black_box(10), black_box(5)).unwrap()));
}

fn sigma_min(c: &mut Criterion) {
    let mut group = c.benchmark_group("sigma_min");
    group.sample_size(20);
    let disk = MpsSolver::new(&BoundaryCurve::disk(2.0).unwrap(), MpsConfig::with_order(16, 0)).unwrap();
    group.bench_function("disk K=16", |b| {
        b.iter(|| disk.sigma_min(BoundaryCondition::Robin(1.0), black_box(0.64)).unwrap())
    });
    let e = MpsSolver::new(&ellipse(), MpsConfig::with_order(24, 0)).unwrap();
    group.bench_function("ellipse K=24", |b| {
        b.iter(|| e.sigma_min(BoundaryCondition::Robin(1.0), black_box(0.7)).unwrap())
    });
    let p = MpsSolver::new(&cos3(), MpsConfig::with_order(48, 0)).unwrap();
    group.bench_function("cos3 K=48", |b| {
        b.iter(|| p.sigma_min(BoundaryCondition::Dirichlet, black_box(1.49)).unwrap())
    });
    group.finish();
}

fn bergman(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_omega");
    group.sample_size(20);
    let e = ellipse();
    for n in [10, 20, 30] {
        group.bench_function(format!("ellipse N={n}"), |b| b.iter(|| s_omega(&e, black_box(n), 1024).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bessel, sigma_min, bergman);
criterion_main!(benches);
