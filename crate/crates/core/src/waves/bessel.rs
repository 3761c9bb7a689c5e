//! Cylindrical beams `C_n Z_n(Ωρ) e^{i(kz - ωt + nθ)}` with `Z = J` or `K`.
//!
//! Writing `u_j = Z_j(Ωρ) e^{ijθ}`, the Cartesian derivatives close on the
//! family: for `J`, `∂x u_j = (Ω/2)(u_{j-1} - u_{j+1})` and
//! `∂y u_j = (iΩ/2)(u_{j-1} + u_{j+1})`; for `K`,
//! `∂x u_j = -(Ω/2)(u_{j-1} + u_{j+1})` and `∂y u_j = (iΩ/2)(u_{j+1} - u_{j-1})`.
//! Gradients and Hessians are exact combinations of neighbouring orders.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Point4, ScalarField};
use crate::special::{bessel_j, bessel_k};

use super::{axicon_dispersion, Branch, DispersionBranch};

type Terms = Vec<(i64, Complex64)>;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Radial {
    J,
    K,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Cylinder {
    radial: Radial,
    n: i64,
    dispersion: DispersionBranch,
    amplitude: Complex64,
}

impl Cylinder {
    fn u(&self, j: i64, x: f64, y: f64) -> Complex64 {
        let rho = x.hypot(y);
        let order = j.unsigned_abs() as usize;
        let arg = self.dispersion.big_omega * rho;
        let radial = match self.radial {
            Radial::J => {
                let v = bessel_j(order, arg);
                if j < 0 && order % 2 == 1 {
                    -v
                } else {
                    v
                }
            }
            Radial::K => bessel_k(order, arg).unwrap_or(f64::INFINITY),
        };
        if order == 0 {
            return Complex64::new(radial, 0.0);
        }
        if rho == 0.0 {
            return match self.radial {
                Radial::J => Complex64::new(0.0, 0.0),
                Radial::K => Complex64::new(f64::INFINITY, 0.0),
            };
        }
        let s = if j < 0 { -1.0 } else { 1.0 };
        let e = Complex64::new(x / rho, s * y / rho);
        e.powi(order as i32) * radial
    }

    fn eval(&self, terms: &Terms, x: f64, y: f64) -> Complex64 {
        terms.iter().map(|&(j, c)| c * self.u(j, x, y)).sum()
    }

    /// Apply `∂x` (axis 1) or `∂y` (axis 2) to a combination of `u_j`.
    fn derive(&self, terms: &Terms, axis: usize) -> Terms {
        let h = self.dispersion.big_omega / 2.0;
        let i = Complex64::new(0.0, 1.0);
        let (lower, upper) = match (self.radial, axis) {
            (Radial::J, 1) => (Complex64::new(h, 0.0), Complex64::new(-h, 0.0)),
            (Radial::J, _) => (i * h, i * h),
            (Radial::K, 1) => (Complex64::new(-h, 0.0), Complex64::new(-h, 0.0)),
            (Radial::K, _) => (-i * h, i * h),
        };
        let mut out: Terms = Vec::with_capacity(terms.len() * 2);
        for &(j, c) in terms {
            for (jj, cc) in [(j - 1, c * lower), (j + 1, c * upper)] {
                match out.iter_mut().find(|(k, _)| *k == jj) {
                    Some(slot) => slot.1 += cc,
                    None => out.push((jj, cc)),
                }
            }
        }
        out
    }

    fn phase(&self, p: Point4) -> Complex64 {
        Complex64::from_polar(1.0, self.dispersion.k * p[3] - self.dispersion.omega * p[0])
    }

    /// `∂μ` of the plane factor as a multiplier.
    fn kappa(&self) -> [Complex64; 4] {
        [
            Complex64::new(0.0, -self.dispersion.omega),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, self.dispersion.k),
        ]
    }

    fn base(&self) -> Terms {
        vec![(self.n, self.amplitude)]
    }

    fn value(&self, p: Point4) -> Complex64 {
        self.eval(&self.base(), p[1], p[2]) * self.phase(p)
    }

    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        let base = self.base();
        let ph = self.phase(p);
        let v = self.eval(&base, p[1], p[2]) * ph;
        let kap = self.kappa();
        [
            kap[0] * v,
            self.eval(&self.derive(&base, 1), p[1], p[2]) * ph,
            self.eval(&self.derive(&base, 2), p[1], p[2]) * ph,
            kap[3] * v,
        ]
    }

    fn hessian(&self, p: Point4) -> [[Complex64; 4]; 4] {
        let base = self.base();
        let ph = self.phase(p);
        let (x, y) = (p[1], p[2]);
        let v = self.eval(&base, x, y) * ph;
        let dx = self.derive(&base, 1);
        let dy = self.derive(&base, 2);
        let transverse = [self.eval(&dx, x, y) * ph, self.eval(&dy, x, y) * ph];
        let second = [
            [self.eval(&self.derive(&dx, 1), x, y) * ph, self.eval(&self.derive(&dx, 2), x, y) * ph],
            [self.eval(&self.derive(&dy, 1), x, y) * ph, self.eval(&self.derive(&dy, 2), x, y) * ph],
        ];
        let kap = self.kappa();
        let is_plane = |mu: usize| mu == 0 || mu == 3;
        std::array::from_fn(|a| {
            std::array::from_fn(|b| match (is_plane(a), is_plane(b)) {
                (true, true) => kap[a] * kap[b] * v,
                (true, false) => kap[a] * transverse[b - 1],
                (false, true) => kap[b] * transverse[a - 1],
                (false, false) => second[a - 1][b - 1],
            })
        })
    }
}

/// `C_n J_n(Ωρ) e^{i(kz - ωt + nθ)}` on the subluminal branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselBeam(Cylinder);

impl BesselBeam {
    pub fn new(n: i64, dispersion: DispersionBranch, amplitude: Complex64) -> Result<Self> {
        if dispersion.branch != Branch::Subluminal {
            return Err(Error::Dispersion(
                "a Bessel beam lives on the subluminal branch ω² − k² = Ω²".into(),
            ));
        }
        dispersion.validate()?;
        Ok(Self(Cylinder { radial: Radial::J, n, dispersion, amplitude }))
    }

    /// Axicon parametrisation with `ω = k̄`, `k = k̄ cos η`, `Ω = k̄ sin η`.
    pub fn axicon(n: i64, kbar: f64, eta: f64, amplitude: Complex64) -> Result<Self> {
        Self::new(n, axicon_dispersion(kbar, eta)?, amplitude)
    }

    pub fn order(&self) -> i64 {
        self.0.n
    }

    pub fn dispersion(&self) -> &DispersionBranch {
        &self.0.dispersion
    }
}

impl ScalarField for BesselBeam {
    fn value(&self, p: Point4) -> Complex64 {
        self.0.value(p)
    }
    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        self.0.gradient(p)
    }
    fn hessian(&self, p: Point4) -> Option<[[Complex64; 4]; 4]> {
        Some(self.0.hessian(p))
    }
}

/// The axicon form `C_n J_n(k̄ρ sin η) e^{i(k̄ z cos η - ωt + nθ)}` with `ω = k̄`,
/// evaluated directly in cylindrical coordinates.
pub fn eval_axicon(n: usize, kbar: f64, eta: f64, amplitude: Complex64, p: Point4) -> Complex64 {
    let rho = p[1].hypot(p[2]);
    let theta = p[2].atan2(p[1]);
    let phase = kbar * p[3] * eta.cos() - kbar * p[0] + n as f64 * theta;
    amplitude * bessel_j(n, kbar * rho * eta.sin()) * Complex64::from_polar(1.0, phase)
}

/// `C_n K_n(Ωρ) e^{i(kz - ωt + nθ)}` on the superluminal branch; singular on
/// the axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModifiedBesselBeam(Cylinder);

impl ModifiedBesselBeam {
    pub fn new(n: i64, dispersion: DispersionBranch, amplitude: Complex64) -> Result<Self> {
        if dispersion.branch != Branch::Superluminal {
            return Err(Error::Dispersion(
                "a modified Bessel beam lives on the superluminal branch ω² − k² = −Ω²".into(),
            ));
        }
        dispersion.validate()?;
        if dispersion.big_omega <= 0.0 {
            return Err(Error::Dispersion("a modified Bessel beam needs Ω > 0".into()));
        }
        Ok(Self(Cylinder { radial: Radial::K, n, dispersion, amplitude }))
    }

    pub fn order(&self) -> i64 {
        self.0.n
    }

    pub fn dispersion(&self) -> &DispersionBranch {
        &self.0.dispersion
    }

    /// Like [`ScalarField::value`] but reports the on-axis singularity.
    pub fn try_value(&self, p: Point4) -> Result<Complex64> {
        if p[1] == 0.0 && p[2] == 0.0 {
            return Err(Error::Singular(p));
        }
        Ok(self.0.value(p))
    }
}

impl ScalarField for ModifiedBesselBeam {
    fn value(&self, p: Point4) -> Complex64 {
        self.0.value(p)
    }
    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        self.0.gradient(p)
    }
    fn hessian(&self, p: Point4) -> Option<[[Complex64; 4]; 4]> {
        Some(self.0.hessian(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waves::{dispersion_solve, Given};
    use std::f64::consts::FRAC_PI_4;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn sub() -> DispersionBranch {
        dispersion_solve(Branch::Subluminal, Given::OmegaBigOmega { omega: 5.0, big_omega: 3.0 }).unwrap()
    }

    fn sup() -> DispersionBranch {
        dispersion_solve(Branch::Superluminal, Given::KBigOmega { k: 5.0, big_omega: 3.0 }).unwrap()
    }

    #[test]
    fn on_axis_values() {
        let b0 = BesselBeam::new(0, sub(), one()).unwrap();
        let p = [0.3, 0.0, 0.0, 0.7];
        let expected = Complex64::from_polar(1.0, 4.0 * 0.7 - 5.0 * 0.3);
        assert!((b0.value(p) - expected).norm() < 1e-15);
        let b2 = BesselBeam::new(2, sub(), one()).unwrap();
        assert_eq!(b2.value(p), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn branch_is_checked() {
        assert!(BesselBeam::new(0, sup(), one()).is_err());
        assert!(ModifiedBesselBeam::new(0, sub(), one()).is_err());
    }

    #[test]
    fn axicon_form_agrees() {
        let kbar = 4.0;
        let b = BesselBeam::axicon(3, kbar, FRAC_PI_4, one()).unwrap();
        for p in [[0.1, 0.4, -0.2, 0.3], [1.0, -0.7, 0.5, -1.2]] {
            let a = eval_axicon(3, kbar, FRAC_PI_4, one(), p);
            assert!((a - b.value(p)).norm() < 1e-13);
        }
    }

    #[test]
    fn modified_beam_singular_on_axis() {
        let b = ModifiedBesselBeam::new(0, sup(), one()).unwrap();
        assert!(matches!(b.try_value([0.0, 0.0, 0.0, 1.0]), Err(Error::Singular(_))));
        let near = b.value([0.0, 1e-8, 0.0, 0.0]).norm();
        let far = b.value([0.0, 1e-4, 0.0, 0.0]).norm();
        assert!(near > far);
    }

    fn check_derivatives<F: ScalarField>(f: &F, p: Point4) {
        let h = 1e-5;
        let g = f.gradient(p);
        let hess = f.hessian(p).unwrap();
        for mu in 0..4 {
            let mut a = p;
            let mut c = p;
            a[mu] += h;
            c[mu] -= h;
            let fd = (f.value(a) - f.value(c)) / (2.0 * h);
            assert!((fd - g[mu]).norm() < 1e-7 * (1.0 + g[mu].norm()), "grad mu={mu}");
            let ga = f.gradient(a);
            let gc = f.gradient(c);
            for nu in 0..4 {
                let fd2 = (ga[nu] - gc[nu]) / (2.0 * h);
                assert!((fd2 - hess[mu][nu]).norm() < 1e-6 * (1.0 + hess[mu][nu].norm()), "hess {mu}{nu}");
            }
        }
    }

    #[test]
    fn derivatives_match_central_differences() {
        for n in [0, 1, 2, -3] {
            let p = [0.2, 0.31, -0.57, 0.4];
            check_derivatives(&BesselBeam::new(n, sub(), one()).unwrap(), p);
            check_derivatives(&ModifiedBesselBeam::new(n, sup(), one()).unwrap(), p);
        }
    }
}
