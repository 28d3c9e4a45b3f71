use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lattice_casimir::special::kernel_power_mean;
use lattice_casimir::{
    casimir_energy, casimir_energy_massive, classify_behavior, integrate_bz, sweep,
    BoundaryCondition, DispersionSpec, Geometry, QuadratureConfig, Thresholds,
};
use lattice_casimir_bench::workloads;

fn casimir(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let mut group = c.benchmark_group("casimir_energy");
    for w in workloads() {
        group.bench_function(w.name, |b| {
            b.iter(|| casimir_energy(black_box(&w.spec), &w.geom, w.bc, &cfg).unwrap())
        });
    }
    let geom = Geometry::new(3, 2).unwrap();
    group.bench_function("massive_am5_nz2", |b| {
        b.iter(|| {
            casimir_energy_massive(black_box(5.0), &geom, BoundaryCondition::Periodic, &cfg)
                .unwrap()
        })
    });
    group.finish();
}

fn pipelines(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let mut group = c.benchmark_group("pipelines");
    group.sample_size(10);
    let nz: Vec<usize> = (1..=16).collect();
    group.bench_function("sweep_s4_16", |b| {
        b.iter(|| {
            sweep(
                &DispersionSpec::massless(4),
                3,
                BoundaryCondition::Periodic,
                &nz,
                &cfg,
            )
            .unwrap()
        })
    });
    group.bench_function("classify_s1_30", |b| {
        b.iter(|| {
            classify_behavior(
                &DispersionSpec::massless(1),
                3,
                BoundaryCondition::Periodic,
                30,
                &cfg,
                &Thresholds::default(),
            )
            .unwrap()
        })
    });
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    c.bench_function("kernel_power_mean_s1", |b| {
        b.iter(|| kernel_power_mean(black_box(3.7), black_box(1)))
    });
    c.bench_function("kernel_power_mean_s7", |b| {
        b.iter(|| kernel_power_mean(black_box(3.7), black_box(7)))
    });
    c.bench_function("integrate_bz_smooth_2d", |b| {
        b.iter(|| {
            integrate_bz(
                |k: &[f64]| (k[0].cos() + k[1].cos()).exp(),
                3,
                black_box(&cfg),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, casimir, pipelines, kernels);
criterion_main!(benches);
