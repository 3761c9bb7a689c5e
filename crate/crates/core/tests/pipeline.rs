//! End-to-end runs across modules.

use num_complex::Complex64;

use weylwave::calculus::{sample, weyl_residual, Grid4, Refinement, Sampling, Scheme};
use weylwave::exec::Exec;
use weylwave::field::MultivectorField;
use weylwave::observables::{stress_energy, Reading};
use weylwave::potential::{dirac_potential, weyl_from_potential, ConstraintPreset, GeneralizedPotential};
use weylwave::spinor::{chirality_residual, Handedness};
use weylwave::waves::{axicon_dispersion, BesselBeam};
use weylwave::calculus::dirac_at;

fn beam() -> BesselBeam {
    BesselBeam::new(1, axicon_dispersion(4.0, 0.6).unwrap(), Complex64::new(1.0, 0.0)).unwrap()
}

#[test]
fn constructed_field_is_weyl_and_derives_from_its_potential() {
    for h in [Handedness::Plus, Handedness::Minus] {
        let pot = GeneralizedPotential::preset(beam(), h, ConstraintPreset::FromA, 0.4, -1.1).unwrap();
        let a = |p| pot.at(p);
        let fd = |p| dirac_at(&a, p, [1e-3; 4], Scheme::Order4);
        let psi = dirac_potential(&pot);
        let f = weyl_from_potential(pot.clone(), h).unwrap();
        for p in [[0.0, 0.3, 0.1, -0.2], [0.4, -0.5, 0.2, 0.7]] {
            let v = f.value(p);
            assert!(chirality_residual(&v) < 1e-12);
            assert!((fd(p) - v.value).max_abs() < 1e-9 * (1.0 + v.value.norm()));
            assert_eq!(psi(p), v.value);
        }
        let r = weyl_residual(&f, &Refinement::around([0.1, 0.2, 0.3, 0.0], 0.2, 6)).unwrap();
        assert!(r.order.at_least(1.9), "{r:?}");
    }
}

#[test]
fn executors_agree_bitwise() {
    let pot = GeneralizedPotential::preset(beam(), Handedness::Plus, ConstraintPreset::FromB, 1.0, 0.0).unwrap();
    let f = weyl_from_potential(pot, Handedness::Plus).unwrap();
    for sampling in [Sampling::Common, Sampling::Full] {
        let base = Refinement::around([0.0; 4], 0.2, 4).with_sampling(sampling);
        let seq = weyl_residual(&f, &base.clone().with_exec(Exec::Sequential)).unwrap();
        let par = weyl_residual(&f, &base.with_exec(Exec::Parallel)).unwrap();
        assert_eq!(seq, par);
    }
    let grid = Grid4::window([0.0; 4], [0.3; 4], [5; 4]).unwrap();
    let a = sample(&grid, &|p| f.at(p), Exec::Sequential);
    let b = sample(&grid, &|p| f.at(p), Exec::Parallel);
    assert_eq!(a.values(), b.values());
}

#[test]
fn energy_density_is_positive_under_the_spinor_reading() {
    let pot = GeneralizedPotential::preset(beam(), Handedness::Plus, ConstraintPreset::FromB, 1.0, 0.0).unwrap();
    let f = weyl_from_potential(pot, Handedness::Plus).unwrap();
    for p in [[0.0, 0.3, 0.1, -0.2], [0.4, -0.5, 0.2, 0.7], [1.0, 1.0, 1.0, 1.0]] {
        let s = stress_energy(&f, p, Reading::DiracHestenes).unwrap();
        assert!(s.t00 > 0.0);
        assert!(s.leakage < 1e-12);
    }
}
