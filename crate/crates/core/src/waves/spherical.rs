//! Spherical Bessel beams moving along z with group speed `v`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Point4, ScalarField};
use crate::special::{legendre_poly_coeffs, poly_derivative, spherical_reduced};

use super::{Branch, DispersionBranch};

/// `Φ = C_ℓ j_ℓ(Ωξ) P_ℓ^m(cos ϑ) e^{imφ} e^{i(ωt - kz)}`.
///
/// The beam is written in the comoving coordinates `X = c x`, `Y = c y`,
/// `Z = γ(z - vt)`, with `c = 1` below the speed of light and `c = i` above it,
/// so that `ξ² = X² + Y² + Z²` reproduces both similarity variables. `ϑ` and
/// `φ` are the polar and azimuthal angles of `(X, Y, Z)`, which keeps the
/// angular factor a solid harmonic and the product an exact solution. The
/// radial factor is evaluated as `Ω^ℓ g_ℓ(Ω²ξ²)` with `g_ℓ(z²) = j_ℓ(z)/z^ℓ`,
/// which is real and smooth for either sign of `ξ²`.
///
/// The wave equation holds only when `ω = γΩ` and `k = γvΩ`, i.e. when the
/// group speed `k/ω` equals the envelope speed `v`; the constructors enforce it.
/// For `v = ∞` the comoving coordinate becomes `Z = -t`, `ω = 0`, `k = Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalBeam {
    pub l: usize,
    pub m: usize,
    pub v: f64,
    pub dispersion: DispersionBranch,
    pub amplitude: Complex64,
    /// `Z = a_t t + a_z z`.
    a_t: f64,
    a_z: f64,
    /// `X = c x`, `Y = c y`.
    c: Complex64,
    /// Monomial coefficients of `d^m P_ℓ / dx^m`.
    angular: Vec<f64>,
}

impl SphericalBeam {
    /// General beam; `v ∈ [0, 1)` selects the subluminal branch,
    /// `v ∈ (1, ∞]` the superluminal one.
    pub fn new(l: usize, m: usize, big_omega: f64, v: f64, amplitude: Complex64) -> Result<Self> {
        if m > l {
            return Err(Error::Domain(format!("order m = {m} exceeds degree ℓ = {l}")));
        }
        if !(big_omega > 0.0) || !big_omega.is_finite() {
            return Err(Error::Domain(format!("Ω = {big_omega} must be positive")));
        }
        let (branch, omega, k, a_t, a_z, c) = if (0.0..1.0).contains(&v) {
            let g = 1.0 / (1.0 - v * v).sqrt();
            (Branch::Subluminal, g * big_omega, g * v * big_omega, -g * v, g, Complex64::new(1.0, 0.0))
        } else if v == f64::INFINITY {
            (Branch::Superluminal, 0.0, big_omega, -1.0, 0.0, Complex64::new(0.0, 1.0))
        } else if v > 1.0 {
            let g = 1.0 / (v * v - 1.0).sqrt();
            (Branch::Superluminal, g * big_omega, g * v * big_omega, -g * v, g, Complex64::new(0.0, 1.0))
        } else {
            return Err(Error::Domain(format!("group speed v = {v} must lie in [0, 1) or (1, ∞]")));
        };
        let angular = poly_derivative(&legendre_poly_coeffs(l), m);
        Ok(Self {
            l,
            m,
            v,
            dispersion: DispersionBranch { branch, omega, k, big_omega },
            amplitude,
            a_t,
            a_z,
            c,
            angular,
        })
    }

    /// The `ℓ = m = 0` beam `C sin(Ωξ)/ξ e^{i(ωt - kz)}`.
    pub fn fundamental(big_omega: f64, v: f64, amplitude: f64) -> Result<Self> {
        Self::new(0, 0, big_omega, v, Complex64::new(amplitude * big_omega, 0.0))
    }

    /// `ξ²` at an event.
    pub fn xi_squared(&self, p: Point4) -> f64 {
        let (x, y, z) = self.comoving(p);
        (x * x + y * y + z * z).re
    }

    fn comoving(&self, p: Point4) -> (Complex64, Complex64, Complex64) {
        (
            self.c * p[1],
            self.c * p[2],
            Complex64::new(self.a_t * p[0] + self.a_z * p[3], 0.0),
        )
    }

    /// Solid harmonic `(X + iY)^m Σ a_j Z^j R^{ℓ-m-j}` and its partials in
    /// `X, Y, Z`.
    fn solid(&self, x: Complex64, y: Complex64, z: Complex64) -> (Complex64, [Complex64; 3]) {
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let w = x + i * y;
        let r2 = x * x + y * y + z * z;
        let mut poly = zero;
        let mut d_r2 = zero;
        let mut d_z = zero;
        for (j, &a) in self.angular.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let p = (self.l - self.m - j) / 2;
            let zj = z.powi(j as i32);
            let r2p = r2.powi(p as i32);
            poly += zj * r2p * a;
            if p > 0 {
                d_r2 += zj * r2.powi(p as i32 - 1) * (a * p as f64);
            }
            if j > 0 {
                d_z += z.powi(j as i32 - 1) * r2p * (a * j as f64);
            }
        }
        let wm = w.powi(self.m as i32);
        let dwm = if self.m > 0 {
            w.powi(self.m as i32 - 1) * self.m as f64
        } else {
            zero
        };
        let s = wm * poly;
        let sx = dwm * poly + wm * d_r2 * (x * 2.0);
        let sy = dwm * i * poly + wm * d_r2 * (y * 2.0);
        let sz = wm * (d_z + d_r2 * (z * 2.0));
        (s, [sx, sy, sz])
    }

    fn phase(&self, p: Point4) -> Complex64 {
        Complex64::from_polar(1.0, self.dispersion.omega * p[0] - self.dispersion.k * p[3])
    }
}

impl ScalarField for SphericalBeam {
    fn value(&self, p: Point4) -> Complex64 {
        let (x, y, z) = self.comoving(p);
        let om = self.dispersion.big_omega;
        let s = om * om * (x * x + y * y + z * z).re;
        let (harm, _) = self.solid(x, y, z);
        self.amplitude * om.powi(self.l as i32) * spherical_reduced(self.l, s) * harm * self.phase(p)
    }

    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        let (x, y, z) = self.comoving(p);
        let om = self.dispersion.big_omega;
        let om2 = om * om;
        let s = om2 * (x * x + y * y + z * z).re;
        let g = spherical_reduced(self.l, s);
        let dg = -0.5 * spherical_reduced(self.l + 1, s);
        let (harm, [hx, hy, hz]) = self.solid(x, y, z);
        let c2 = (self.c * self.c).re;
        // ∂s/∂(t, x, y, z)
        let zr = z.re;
        let ds = [
            2.0 * om2 * zr * self.a_t,
            2.0 * om2 * c2 * p[1],
            2.0 * om2 * c2 * p[2],
            2.0 * om2 * zr * self.a_z,
        ];
        let dh = [hz * self.a_t, hx * self.c, hy * self.c, hz * self.a_z];
        let kappa = [self.dispersion.omega, 0.0, 0.0, -self.dispersion.k];
        let pref = self.amplitude * om.powi(self.l as i32) * self.phase(p);
        std::array::from_fn(|mu| {
            pref * (harm * (dg * ds[mu]) + dh[mu] * g + harm * g * Complex64::new(0.0, kappa[mu]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{legendre_p, spherical_j};

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn reduces_to_textbook_form_at_rest() {
        let b = SphericalBeam::new(2, 1, 1.7, 0.0, one()).unwrap();
        let p = [0.4, 0.3, -0.5, 0.8];
        let r = (0.09f64 + 0.25 + 0.64).sqrt();
        let theta = (0.8 / r).acos();
        let phi = (-0.5f64).atan2(0.3);
        let expected = spherical_j(2, 1.7 * r)
            * legendre_p(2, 1, theta.cos()).unwrap()
            * Complex64::from_polar(1.0, phi)
            * Complex64::from_polar(1.0, 1.7 * 0.4);
        assert!((b.value(p) - expected).norm() < 1e-14);
    }

    #[test]
    fn fundamental_on_the_envelope_centre() {
        let b = SphericalBeam::fundamental(3.0, 0.6, 2.0).unwrap();
        let d = b.dispersion;
        let t: f64 = 0.7;
        let p = [t, 0.0, 0.0, 0.6 * t];
        let expected = 2.0 * 3.0 * Complex64::from_polar(1.0, d.omega * t - d.k * 0.6 * t);
        assert!((b.value(p) - expected).norm() < 1e-14);
        assert!(d.validate().is_ok());
        assert!((d.group_velocity() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn superluminal_branch_kinematics() {
        let b = SphericalBeam::fundamental(3.0, 1.25, 1.0).unwrap();
        assert_eq!(b.dispersion.branch, Branch::Superluminal);
        assert!(b.dispersion.validate().is_ok());
        assert!((b.dispersion.group_velocity() - 1.25).abs() < 1e-14);
        let inf = SphericalBeam::fundamental(3.0, f64::INFINITY, 1.0).unwrap();
        assert_eq!(inf.dispersion.omega, 0.0);
        assert_eq!(inf.dispersion.k, 3.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SphericalBeam::new(1, 2, 1.0, 0.0, one()).is_err());
        assert!(SphericalBeam::new(0, 0, 1.0, 1.0, one()).is_err());
        assert!(SphericalBeam::new(0, 0, -1.0, 0.5, one()).is_err());
    }

    #[test]
    fn gradient_matches_central_differences() {
        for (l, m, v) in [(0, 0, 0.5), (1, 1, 0.3), (2, 0, 1.4), (2, 2, 2.0), (1, 0, f64::INFINITY)] {
            let b = SphericalBeam::new(l, m, 2.0, v, one()).unwrap();
            let p = [0.21, 0.37, -0.44, 0.15];
            let g = b.gradient(p);
            let h = 1e-5;
            for mu in 0..4 {
                let mut a = p;
                let mut c = p;
                a[mu] += h;
                c[mu] -= h;
                let fd = (b.value(a) - b.value(c)) / (2.0 * h);
                assert!((fd - g[mu]).norm() < 1e-7 * (1.0 + g[mu].norm()), "l={l} m={m} v={v} mu={mu}");
            }
        }
    }
}
