use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nemsqueeze_bench::length_voltage_axes;
use nemsqueeze_core::dynamics::{evolve_variances, evolve_variances_quadrature_oracle};
use nemsqueeze_core::thermal::beta_roots;
use nemsqueeze_core::{figure_preset, run_grid, Device, FigureId, Metric};

fn dynamics(c: &mut Criterion) {
    let analysis = Device::reference_graphene().analyze().unwrap();
    let t = 2.0 * analysis.coupling.t_char.unwrap();
    c.bench_function("evolve_variances", |b| {
        b.iter(|| {
            evolve_variances(
                &analysis.modal,
                &analysis.coupling,
                black_box(0.3),
                black_box(t),
            )
        })
    });
    c.bench_function("evolve_variances_quadrature_oracle", |b| {
        b.iter(|| {
            evolve_variances_quadrature_oracle(
                &analysis.modal,
                &analysis.coupling,
                black_box(0.3),
                black_box(t),
            )
        })
    });
    c.bench_function("analyze_reference_graphene", |b| {
        let device = Device::reference_graphene();
        b.iter(|| black_box(&device).analyze())
    });
}

fn thermal(c: &mut Criterion) {
    c.bench_function("beta_roots_20", |b| b.iter(|| beta_roots(black_box(20))));
}

fn grids(c: &mut Criterion) {
    let device = Device::reference_graphene();
    let axes = length_voltage_axes(32);
    c.bench_function("grid_32x32_log10_r", |b| {
        b.iter(|| run_grid(&device, black_box(&axes), Metric::Log10R))
    });
    let mut group = c.benchmark_group("figures");
    group.sample_size(10);
    group.bench_function("fig4b", |b| b.iter(|| figure_preset(FigureId::Fig4b)));
    group.finish();
}

criterion_group!(benches, dynamics, thermal, grids);
criterion_main!(benches);
