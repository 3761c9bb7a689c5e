use num_complex::Complex64;

use super::*;
use crate::clifford::{Blade, CMv, Mv};
use crate::exec::Exec;
use crate::field::{Point4, ScalarField};
use crate::waves::{PlaneWave, SphericalBeam};

fn small_grid(n: usize, h: f64) -> Grid4 {
    Grid4::new([0.1, -0.2, 0.3, 0.05], [h; 4], [n; 4]).unwrap()
}

fn scalar(v: f64) -> CMv {
    CMv::scalar(Complex64::new(v, 0.0))
}

#[test]
fn grid_indexing_round_trips() {
    let g = Grid4::new([0.0; 4], [1.0, 0.5, 0.25, 2.0], [2, 3, 4, 5]).unwrap();
    for i in 0..g.len() {
        assert_eq!(g.ravel(g.unravel(i)), i);
    }
    assert_eq!(g.point([1, 2, 3, 4]), [1.0, 1.0, 0.75, 8.0]);
    let r = g.refined();
    assert_eq!(r.extents, [3, 5, 7, 9]);
    assert_eq!(r.point([2, 4, 6, 8]), g.point([1, 2, 3, 4]));
}

#[test]
fn invalid_grids_rejected() {
    assert!(Grid4::new([0.0; 4], [1.0, 0.0, 1.0, 1.0], [3; 4]).is_err());
    assert!(Grid4::new([0.0; 4], [1.0; 4], [3, 0, 3, 3]).is_err());
    assert!(matches!(small_grid(2, 0.1).shrink(1), Err(crate::error::Error::GridTooSmall(_))));
    assert!(SampledField::new(small_grid(3, 0.1), vec![]).is_err());
}

#[test]
fn dirac_of_constant_is_zero_and_of_x_is_gamma1() {
    let g = small_grid(5, 0.1);
    let c = sample(&g, &|_p: Point4| scalar(3.0) + CMv::gamma(2).map(|v| v * 2.0), Exec::Sequential);
    let d = dirac_fd(&c, Scheme::Order2, Exec::Sequential).unwrap();
    assert_eq!(d.grid().extents, [3; 4]);
    assert!(d.values().iter().all(|v| v.max_abs() == 0.0));

    let x = sample(&g, &|p: Point4| scalar(p[1]), Exec::Sequential);
    for scheme in [Scheme::Order2, Scheme::Order4] {
        let d = dirac_fd(&x, scheme, Exec::Sequential).unwrap();
        for v in d.values() {
            assert!(v.max_abs_diff(&CMv::gamma(1)) < 1e-13);
        }
    }
}

#[test]
fn stencil_is_exact_on_low_degree_polynomials() {
    let cubic = |p: Point4| scalar(p[0].powi(3) - 2.0 * p[1] * p[2] * p[3] + p[3] * p[3]);
    let exact = |p: Point4| {
        Mv::vector([3.0 * p[0] * p[0], -2.0 * p[2] * p[3], -2.0 * p[1] * p[3], -2.0 * p[1] * p[2] + 2.0 * p[3]]).to_complex()
    };
    let p = [0.3, 0.2, -0.1, 0.4];
    let got = dirac_at(&cubic, p, [0.1; 4], Scheme::Order4);
    assert!(got.max_abs_diff(&exact(p)) < 1e-12);
    let quad = |p: Point4| scalar(p[1] * p[1] + p[0] * p[3]);
    let got = dirac_at(&quad, p, [0.1; 4], Scheme::Order2);
    assert!(got.max_abs_diff(&Mv::vector([p[3], 2.0 * p[1], 0.0, p[0]]).to_complex()) < 1e-13);
}

#[test]
fn plane_wave_gradient_converges() {
    let w = PlaneWave { omega: 2.0, k: [0.5, -1.0, 1.5], amplitude: Complex64::new(1.0, 0.0) };
    let p = [0.2, 0.1, -0.3, 0.4];
    let exact = w.gradient_vector(p);
    let f = |q: Point4| CMv::scalar(w.value(q));
    for (scheme, expected) in [(Scheme::Order2, 2.0), (Scheme::Order4, 4.0)] {
        let errs: Vec<(f64, f64)> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&h| (h, (dirac_at(&f, p, [h; 4], scheme) - exact).norm()))
            .collect();
        let order = convergence_order(&errs).unwrap().value().unwrap();
        assert!((order - expected).abs() < 0.05, "{scheme:?}: {order}");
    }
}

#[test]
fn grade_split_on_homogeneous_fields() {
    let g = small_grid(5, 0.1);
    let s = sample(&g, &|p: Point4| scalar(p[0] * p[1] + p[3].sin()), Exec::Sequential);
    assert_eq!(grade_split_check(&s, Scheme::Order2, Exec::Sequential).unwrap(), 0.0);
    let d = dirac_fd(&s, Scheme::Order2, Exec::Sequential).unwrap();
    assert!(d.values().iter().all(|v| v.is_grade(1, 0.0)));

    let v = sample(&g, &|p: Point4| Mv::vector([p[1], p[0] * p[2], p[3].cos(), p[1] * p[1]]).to_complex(), Exec::Sequential);
    assert!(grade_split_check(&v, Scheme::Order2, Exec::Sequential).unwrap() <= 1e-15);

    let biv = |p: Point4| {
        let mut m = Mv::zero();
        for (k, b) in Blade::canonical().into_iter().filter(|b| b.grade() == 2).enumerate() {
            m.set_coeff(b, ((k + 1) as f64 * p[k % 4] + 0.3 * k as f64).sin());
        }
        m.to_complex()
    };
    let b = sample(&g, &biv, Exec::Sequential);
    assert!(grade_split_check(&b, Scheme::Order4, Exec::Sequential).unwrap() <= 1e-12);
    let mixed = sample(&g, &|p: Point4| scalar(p[0]) + CMv::gamma(1), Exec::Sequential);
    assert!(grade_split_check(&mixed, Scheme::Order2, Exec::Sequential).is_err());
}

#[test]
fn dirac_twice_is_wide_dalembertian() {
    let g = small_grid(7, 0.05);
    let phi = |p: Point4| (p[0] * 1.3).sin() * (p[1] + 0.5 * p[2]).cos() + p[3] * p[3] * p[0];
    let s = sample(&g, &|p: Point4| scalar(phi(p)), Exec::Sequential);
    let dd = dirac_fd(&dirac_fd(&s, Scheme::Order2, Exec::Sequential).unwrap(), Scheme::Order2, Exec::Sequential).unwrap();
    let h = 0.05;
    for (i, v) in dd.values().iter().enumerate() {
        let p = dd.grid().point(dd.grid().unravel(i));
        let mut wide = 0.0;
        for mu in 0..4 {
            let mut a = p;
            let mut c = p;
            a[mu] += 2.0 * h;
            c[mu] -= 2.0 * h;
            let d2 = (phi(a) - 2.0 * phi(p) + phi(c)) / (4.0 * h * h);
            wide += if mu == 0 { d2 } else { -d2 };
        }
        assert!((v.scalar_part().re - wide).abs() < 1e-9);
        assert!((*v - v.grade_unchecked(0)).max_abs() < 1e-9);
    }
}

#[test]
fn convergence_order_cases() {
    let sq: Vec<(f64, f64)> = [0.1, 0.05, 0.025].iter().map(|&h| (h, 3.0 * h * h)).collect();
    assert!((convergence_order(&sq).unwrap().value().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(convergence_order(&[(0.1, 1e-15), (0.05, 1e-16), (0.025, 0.0)]).unwrap(), Order::Exact);
    assert_eq!(convergence_order(&[(0.1, 1.0), (0.05, 0.0), (0.025, 1.0)]).unwrap(), Order::Exact);
    assert!(convergence_order(&[(0.1, 1.0), (0.05, 0.5)]).is_err());
    let mixed: Vec<(f64, f64)> = [0.1f64, 0.05, 0.025, 0.0125].iter().map(|&h| (h, h * h + 0.01 * h.powi(3))).collect();
    assert!((convergence_order(&mixed).unwrap().value().unwrap() - 2.0).abs() < 0.05);
}

#[test]
fn luminal_plane_wave_residual_is_rounding() {
    use crate::potential::{weyl_from_potential, ConstraintPreset, GeneralizedPotential};
    use crate::spinor::Handedness;
    let u = PlaneWave::luminal(2.0, [0.0, 0.0, 1.0]);
    let pot = GeneralizedPotential::preset(u, Handedness::Plus, ConstraintPreset::FromB, 1.0, 0.5).unwrap();
    let f = weyl_from_potential(pot, Handedness::Plus).unwrap();
    let r = weyl_residual(&f, &Refinement::around([0.0; 4], 0.2, 4)).unwrap();
    assert!(r.finest().max < 1e-12, "{r:?}");
}

#[test]
fn constant_field_residual_is_exact() {
    let f = |_p: Point4| scalar(1.0) + CMv::pseudoscalar();
    let r = weyl_residual(&f, &Refinement::around([0.0; 4], 0.2, 2)).unwrap();
    assert_eq!(r.order, Order::Exact);
    assert_eq!(r.extrapolated, 0.0);
}

#[test]
fn dirac_hestenes_rest_solution() {
    let m = 1.0;
    let psi = move |p: Point4| {
        let phase = -m * p[0];
        (Mv::scalar(phase.cos()) + crate::spinor::gamma21::<f64>() * phase.sin()).to_complex()
    };
    let r = dirac_hestenes_residual(&psi, m, &Refinement::around([0.3, 0.0, 0.0, 0.0], 0.3, 2)).unwrap();
    assert!((r.order.value().unwrap() - 2.0).abs() < 0.05, "{r:?}");
    assert!(r.relative_extrapolated() < 1e-5, "{r:?}");
    let zero = |_p: Point4| CMv::zero();
    let r = dirac_hestenes_residual(&zero, m, &Refinement::around([0.0; 4], 0.3, 2)).unwrap();
    assert_eq!(r.order, Order::Exact);
}

#[test]
fn dalembertian_negative_control_and_rest_beam() {
    struct T2;
    impl ScalarField for T2 {
        fn value(&self, p: Point4) -> Complex64 {
            Complex64::new(p[0] * p[0], 0.0)
        }
        fn gradient(&self, p: Point4) -> [Complex64; 4] {
            let z = Complex64::new(0.0, 0.0);
            [Complex64::new(2.0 * p[0], 0.0), z, z, z]
        }
    }
    let r = dalembertian_residual(&T2, &Refinement::around([0.5; 4], 0.2, 2)).unwrap();
    for n in &r.norms {
        assert!((n.rms - 2.0).abs() < 1e-9 && (n.max - 2.0).abs() < 1e-9);
    }
    assert!(r.order.value().unwrap().abs() < 1e-6);

    let b = SphericalBeam::fundamental(3.0, 0.0, 1.0).unwrap();
    let r = dalembertian_residual(&b, &Refinement::around([0.1, 0.2, -0.1, 0.15], 0.2, 4)).unwrap();
    assert!(r.order.value().unwrap() > 1.9, "{r:?}");
}

#[test]
fn exclusion_and_executors() {
    let b = SphericalBeam::fundamental(2.0, 0.5, 1.0).unwrap();
    let base = Refinement::around([0.0; 4], 0.2, 2);
    let seq = dalembertian_residual(&b, &base.clone().with_exec(Exec::Sequential)).unwrap();
    let par = dalembertian_residual(&b, &base.clone().with_exec(Exec::Parallel)).unwrap();
    assert_eq!(seq, par);
    let all = std::sync::Arc::new(|_p: Point4, _h: [f64; 4]| true);
    assert!(dalembertian_residual(&b, &base.with_exclusion(all)).is_err());
}
