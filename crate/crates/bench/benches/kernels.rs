use criterion::{black_box, criterion_group, criterion_main, Criterion};

use isoprofile::constants::gamma_n;
use isoprofile::numerics::{integrate, QuadratureSpec};
use isoprofile::profile::cosine_grid;
use isoprofile::spaceform::SpaceForm;
use isoprofile::viscosity::{check_supersolution, CheckSpec, DifferentialInequality};
use isoprofile::warped::candidate_profile;
use isoprofile_bench::unit_perturbed_sphere;

fn bench_quadrature(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    c.bench_function("integrate cos^7 over half period", |b| {
        b.iter(|| {
            integrate(
                |t: f64| t.cos().powi(7),
                black_box(-1.5),
                black_box(1.5),
                &spec,
            )
        })
    });
    c.bench_function("gamma_n(8)", |b| b.iter(|| gamma_n(black_box(8))));
}

fn bench_sphere_profile(c: &mut Criterion) {
    let sf = SpaceForm::new(3, 1.0).unwrap();
    c.bench_function("profile_h1 single evaluation (n=3)", |b| {
        b.iter(|| sf.profile_h1(black_box(0.37)))
    });

    let profile = sf.h1_profile().unwrap();
    let ineq = DifferentialInequality::second_order(3, 1.0).unwrap();
    let grid = cosine_grid(128);
    c.bench_function("check_supersolution 128-point closed form", |b| {
        b.iter(|| check_supersolution(&profile, &ineq, &grid, &CheckSpec::closed_form()))
    });
}

fn bench_candidate(c: &mut Criterion) {
    let metric = unit_perturbed_sphere(0.05);
    let half = metric.total_volume() / 2.0;
    c.bench_function("candidate_profile at half volume", |b| {
        b.iter(|| candidate_profile(&metric, black_box(half)))
    });
}

criterion_group!(
    benches,
    bench_quadrature,
    bench_sphere_profile,
    bench_candidate
);
criterion_main!(benches);
