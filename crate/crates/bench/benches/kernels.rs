use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use steerlab::linalg::eig_hermitian;
use steerlab::measures::{bures_fidelity, concurrence, steering_of};
use steerlab::protocol::{evolve, optimal_mr_numeric, Case, MrPolicy, Objective};
use steerlab::qstate::werner;
use steerlab::sweep::{run, time_grid};
use steerlab::{ReservoirParams, ScenarioConfig};

fn kernels(c: &mut Criterion) {
    let rho = evolve(Case::B, 0.9, 0.4, 0.3, 0.6).unwrap().state;
    let initial = werner(0.9).unwrap();

    c.bench_function("eig_hermitian_4x4", |b| {
        b.iter(|| eig_hermitian(black_box(rho.matrix()), 1e-10).unwrap())
    });
    c.bench_function("concurrence", |b| {
        b.iter(|| concurrence(black_box(&rho)).unwrap())
    });
    c.bench_function("steering", |b| {
        b.iter(|| steering_of(black_box(&rho)).unwrap())
    });
    c.bench_function("bures_fidelity", |b| {
        b.iter(|| bures_fidelity(black_box(&initial), black_box(&rho)).unwrap())
    });
    for case in [Case::A, Case::B] {
        c.bench_function(&format!("evolve_{case:?}"), |b| {
            b.iter(|| evolve(case, black_box(0.8), 0.4, 0.3, 0.5).unwrap())
        });
    }
}

fn optimiser(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimal_mr_numeric");
    for objective in [Objective::Concurrence, Objective::Steering] {
        group.bench_function(format!("{objective:?}"), |b| {
            b.iter(|| optimal_mr_numeric(Case::B, 0.9, black_box(0.4), 0.3, objective).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let times = time_grid(0.0, 30.0, 600).unwrap();
    let mut group = c.benchmark_group("sweep_600");
    group.sample_size(20);
    for (name, policy) in [
        ("analytic", MrPolicy::AnalyticOptimal),
        ("explicit", MrPolicy::Explicit(0.5)),
    ] {
        let cfg = ScenarioConfig {
            case: Case::B,
            p: 0.9,
            m: 0.4,
            mr_policy: policy,
            reservoir: ReservoirParams::default(),
            allow_markovian: false,
        };
        group.bench_function(name, |b| b.iter(|| run(black_box(&cfg), &times).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, kernels, optimiser, sweep);
criterion_main!(benches);
