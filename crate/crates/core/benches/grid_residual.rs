use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use weylwave::calculus::{weyl_residual, Refinement, Sampling};
use weylwave::exec::Exec;
use weylwave::observables::{energy_integral, stress_energy, EnergyRule, Reading, Region};
use weylwave::potential::{weyl_from_potential, ConstraintPreset, GeneralizedPotential, WeylField};
use weylwave::spinor::Handedness;
use weylwave::waves::{dispersion_solve, BesselBeam, Branch, Given};

fn field() -> WeylField<BesselBeam> {
    let d = dispersion_solve(Branch::Subluminal, Given::OmegaBigOmega { omega: 5.0, big_omega: 3.0 }).unwrap();
    let beam = BesselBeam::new(0, d, Complex64::new(1.0, 0.0)).unwrap();
    let p = GeneralizedPotential::preset(beam, Handedness::Plus, ConstraintPreset::FromB, 1.0, 0.0).unwrap();
    weyl_from_potential(p, Handedness::Plus).unwrap()
}

fn residual(c: &mut Criterion) {
    let f = field();
    let mut group = c.benchmark_group("weyl_residual_full");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let r = Refinement::around([0.1, 0.2, -0.1, 0.3], 0.2, 6).with_sampling(Sampling::Full).with_exec(exec);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &r, |b, r| {
            b.iter(|| black_box(weyl_residual(&f, r).unwrap()))
        });
    }
    group.finish();
}

fn energy(c: &mut Criterion) {
    let f = field();
    let rule = EnergyRule { order: 8, panels_per_unit: 3.0, theta_points: 8 };
    let mut group = c.benchmark_group("energy_cylinder");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| {
                let density = |p| stress_energy(&f, p, Reading::DiracHestenes).unwrap().t00;
                black_box(energy_integral(density, 0.0, Region::Cylinder { radius: 4.0, half_length: 0.5 }, &rule, exec).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, residual, energy);
criterion_main!(benches);
