use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use alexlin::alexmod::{det_fraction_free, det_interpolation, twisted_jacobian};
use alexlin::corpus;
use alexlin::covers::{branched_cover_matrix, smith_exact, smith_modular};
use alexlin::groups::{kernel_presentation, normalize};
use alexlin::reps::{enumerate_periodic, EnumerateOptions};
use alexlin::{alexander_lin, AugmentedGroupSystem, KernelPresentation, PeriodicRep, PipelineOptions};

fn load(name: &str, rep: &str) -> (AugmentedGroupSystem, KernelPresentation, PeriodicRep) {
    let sys = AugmentedGroupSystem::parse(corpus::get(name).unwrap()).unwrap();
    let kp = kernel_presentation(&normalize(&sys)).unwrap();
    let rho = PeriodicRep::from_json(corpus::get(rep).unwrap(), &kp).unwrap();
    (sys, kp, rho)
}

fn pipeline(c: &mut Criterion) {
    let (bs, _, bs_rho) = load("bs.agp", "bs_rep.json");
    c.bench_function("bs_full_report", |b| {
        b.iter(|| alexander_lin(black_box(&bs), &bs_rho, &PipelineOptions::default()).unwrap())
    });

    let (s73, kp, rho) = load("7_3.agp", "7_3_rep.json");
    let m = twisted_jacobian(&kp, &rho).unwrap();
    let mut g = c.benchmark_group("7_3_determinant");
    g.sample_size(10);
    g.bench_function("interpolation", |b| b.iter(|| det_interpolation(black_box(&m))));
    g.bench_function("fraction_free", |b| b.iter(|| det_fraction_free(black_box(&m))));
    g.bench_function("full_report", |b| {
        b.iter(|| alexander_lin(black_box(&s73), &rho, &PipelineOptions::default()).unwrap())
    });
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let sys = AugmentedGroupSystem::parse(corpus::get("trefoil.agp").unwrap()).unwrap();
    let kp = kernel_presentation(&normalize(&sys)).unwrap();
    c.bench_function("enumerate_trefoil_N4_r3", |b| {
        b.iter(|| enumerate_periodic(black_box(&kp), 4, 3, &EnumerateOptions::default()).unwrap())
    });
}

fn smith(c: &mut Criterion) {
    let fig8 = AugmentedGroupSystem::parse(corpus::get("fig8.agp").unwrap()).unwrap();
    let kp = kernel_presentation(&normalize(&fig8)).unwrap();
    let triv = PeriodicRep::trivial(&kp, 1, 1);
    let m = branched_cover_matrix(&fig8, &triv, 40).unwrap();
    assert!(smith_modular(&m).is_some());
    let mut g = c.benchmark_group("fig8_cover_40");
    g.bench_function("exact", |b| b.iter(|| smith_exact(black_box(&m))));
    g.bench_function("modular", |b| b.iter(|| smith_modular(black_box(&m))));
    g.finish();
}

criterion_group!(benches, pipeline, enumeration, smith);
criterion_main!(benches);
