//! Dirac-Hestenes spinors and their Weyl (chiral) parts.
//!
//! A Dirac-Hestenes spinor is an even multivector `ψ = S + F + γ5 P`. Its Weyl
//! parts are `F± = ½(ψ ∓ γ5 ψ γ2γ1)`; they satisfy `γ5 F± = ±F± γ2γ1` and
//! `F̃± F± = 0`.
//!
//! Frame changes follow the equivalence `ψ' u'⁻¹ = ψ u⁻¹`: the representative
//! of the same spinor in the spin frame `u'` is `ψ' = ψ u⁻¹ u'`.

use crate::clifford::{Multivector, Mv, Scalar};
use crate::error::{Error, Result};
use crate::field::Point4;

/// Relative tolerance used to decide that a multivector has no odd part.
const EVEN_TOL: f64 = 1e-12;
/// Rotor normalization tolerance.
const ROTOR_TOL: f64 = 1e-12;
/// `‖ψψ̃‖ < SINGULAR_RATIO · ‖ψ‖²` classifies ψ as singular.
pub const SINGULAR_RATIO: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Plus,
    Minus,
}

impl Handedness {
    pub fn sign(self) -> f64 {
        match self {
            Handedness::Plus => 1.0,
            Handedness::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Handedness::Plus => Handedness::Minus,
            Handedness::Minus => Handedness::Plus,
        }
    }
}

/// `γ2γ1`.
pub fn gamma21<S: Scalar>() -> Multivector<S> {
    Multivector::product_of(&[2, 1])
}

/// Even multivector `S + F + γ5 P`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorEven<S: Scalar = f64>(Multivector<S>);

impl<S: Scalar> SpinorEven<S> {
    pub fn new(value: Multivector<S>) -> Result<Self> {
        let odd = value.odd_part().norm();
        if odd > EVEN_TOL * value.norm().max(1.0) {
            return Err(Error::NotEven(odd));
        }
        Ok(Self(value.even_part()))
    }

    pub fn value(&self) -> &Multivector<S> {
        &self.0
    }

    pub fn into_inner(self) -> Multivector<S> {
        self.0
    }
}

/// Chirality-projected even value, with its declared handedness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylValue<S: Scalar = f64> {
    pub value: Multivector<S>,
    pub handedness: Handedness,
}

impl<S: Scalar> WeylValue<S> {
    /// Declares `value` to be a Weyl value of the given handedness without
    /// checking; use [`chirality_residual`] and [`null_check`] to test it.
    pub fn declared(value: Multivector<S>, handedness: Handedness) -> Self {
        Self { value, handedness }
    }
}

/// Raw projector `½(ψ ∓ γ5 ψ γ21)` on any multivector.
pub fn project<S: Scalar>(psi: &Multivector<S>, h: Handedness) -> Multivector<S> {
    let g5 = Multivector::<S>::pseudoscalar();
    let twisted = g5 * *psi * gamma21();
    let half = S::from_f64(0.5);
    match h {
        Handedness::Plus => (*psi - twisted) * half,
        Handedness::Minus => (*psi + twisted) * half,
    }
}

pub fn weyl_project<S: Scalar>(psi: &SpinorEven<S>, h: Handedness) -> WeylValue<S> {
    WeylValue {
        value: project(psi.value(), h),
        handedness: h,
    }
}

/// `‖γ5 F ∓ F γ21‖`.
pub fn chirality_residual<S: Scalar>(f: &WeylValue<S>) -> f64 {
    let g5 = Multivector::<S>::pseudoscalar();
    let right = f.value * gamma21() * S::from_f64(f.handedness.sign());
    (g5 * f.value - right).norm()
}

/// `‖F̃F‖ + ‖FF̃‖`.
pub fn null_check<S: Scalar>(f: &WeylValue<S>) -> f64 {
    let rev = f.value.reverse();
    (rev * f.value).norm() + (f.value * rev).norm()
}

/// Current `F γ0 F̃`.
pub fn current<S: Scalar>(f: &Multivector<S>) -> Multivector<S> {
    *f * Multivector::gamma(0) * f.reverse()
}

/// Parity image `Pψ(t, x) = -γ0 ψ(t, -x) γ0`.
pub fn parity<S, F>(psi: F) -> impl Fn(Point4) -> Multivector<S>
where
    S: Scalar,
    F: Fn(Point4) -> Multivector<S>,
{
    move |p| {
        let g0 = Multivector::<S>::gamma(0);
        -(g0 * psi(reflect(p)) * g0)
    }
}

fn reflect(p: Point4) -> Point4 {
    [p[0], -p[1], -p[2], -p[3]]
}

/// Parity eigenstates built from the Weyl parts of a spinor field.
///
/// `up(t, x) = γ0 ψ₋(t, -x) γ0 - ψ₋(t, x)` and
/// `down(t, x) = γ0 ψ₊(t, -x) γ0 + ψ₊(t, x)`, where `ψ± = P±ψ`. The reflected
/// argument in the first term makes these exact eigenvectors of [`parity`]
/// with eigenvalues +1 and -1; for fields even in x it reduces to
/// `γ0 ψ∓ γ0 ∓ ψ∓` evaluated at a single point.
pub struct ParityEigenstates<F> {
    psi: F,
}

impl<S, F> ParityEigenstates<F>
where
    S: Scalar,
    F: Fn(Point4) -> Multivector<S>,
{
    pub fn new(psi: F) -> Self {
        Self { psi }
    }

    pub fn up(&self, p: Point4) -> Multivector<S> {
        let g0 = Multivector::<S>::gamma(0);
        let here = project(&(self.psi)(p), Handedness::Minus);
        let there = project(&(self.psi)(reflect(p)), Handedness::Minus);
        g0 * there * g0 - here
    }

    pub fn down(&self, p: Point4) -> Multivector<S> {
        let g0 = Multivector::<S>::gamma(0);
        let here = project(&(self.psi)(p), Handedness::Plus);
        let there = project(&(self.psi)(reflect(p)), Handedness::Plus);
        g0 * there * g0 + here
    }
}

pub fn parity_eigenstates<S, F>(psi: F) -> ParityEigenstates<F>
where
    S: Scalar,
    F: Fn(Point4) -> Multivector<S>,
{
    ParityEigenstates::new(psi)
}

/// Unit even multivector `u ũ = 1`, acting on vectors as `v ↦ u v ũ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotor(Mv);

impl Rotor {
    pub fn new(u: Mv) -> Result<Self> {
        let odd = u.odd_part().norm();
        if odd > EVEN_TOL * u.norm().max(1.0) {
            return Err(Error::NotEven(odd));
        }
        let defect = (u * u.reverse() - Mv::one()).norm();
        if defect > ROTOR_TOL {
            return Err(Error::NonUnitRotor(defect));
        }
        Ok(Self(u))
    }

    pub fn identity() -> Self {
        Self(Mv::one())
    }

    /// `exp(γiγj · angle/2)`: a rotation when both indices are spatial,
    /// a boost with rapidity `angle` when one of them is 0.
    pub fn from_plane(i: usize, j: usize, angle: f64) -> Result<Self> {
        if i > 3 || j > 3 || i == j {
            return Err(Error::Domain(format!("invalid rotor plane ({i}, {j})")));
        }
        let b = Mv::product_of(&[i, j]);
        let sq = (b * b).scalar_part();
        let half = angle / 2.0;
        let u = if sq < 0.0 {
            Mv::scalar(half.cos()) + b * half.sin()
        } else {
            Mv::scalar(half.cosh()) + b * half.sinh()
        };
        Ok(Self(u))
    }

    pub fn value(&self) -> &Mv {
        &self.0
    }

    pub fn compose(&self, other: &Rotor) -> Rotor {
        Rotor(self.0 * other.0)
    }

    pub fn inverse(&self) -> Rotor {
        Rotor(self.0.reverse())
    }

    /// `u v ũ`.
    pub fn apply<S: Scalar>(&self, v: &Multivector<S>) -> Multivector<S> {
        let u = self.0.cast::<S>();
        u * *v * u.reverse()
    }
}

/// Representative of `ψ` (given in frame `from`) in the spin frame `to`:
/// `ψ' = ψ from⁻¹ to`.
pub fn change_frame<S: Scalar>(psi: &SpinorEven<S>, from: &Rotor, to: &Rotor) -> SpinorEven<S> {
    let factor = (from.inverse().0 * to.0).cast::<S>();
    SpinorEven(*psi.value() * factor)
}

/// Image of a reference element `Γ` under the same frame change, so that
/// `ψ' Γ' ψ̃'` equals `ψ Γ ψ̃`.
pub fn frame_reference<S: Scalar>(gamma: &Multivector<S>, from: &Rotor, to: &Rotor) -> Multivector<S> {
    let r = (to.inverse().0 * from.0).cast::<S>();
    r * *gamma * r.reverse()
}

/// Polar form `ψ = ρ^{1/2} exp(β γ5 / 2) R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polar {
    pub rho: f64,
    pub beta: f64,
    pub rotor: Rotor,
}

impl Polar {
    pub fn reconstruct(&self) -> Mv {
        Mv::exp_pseudoscalar(self.beta / 2.0) * *self.rotor.value() * self.rho.sqrt()
    }

    /// `R γ0 R̃`.
    pub fn velocity(&self) -> Mv {
        self.rotor.apply(&Mv::gamma(0))
    }
}

/// Polar decomposition of a non-singular spinor; `β ∈ (-π, π]`.
pub fn polar_decompose(psi: &SpinorEven<f64>) -> Result<Polar> {
    let v = *psi.value();
    let norm2 = v.norm_sqr();
    let q = v * v.reverse();
    if norm2 == 0.0 || q.norm() < SINGULAR_RATIO * norm2 {
        let ratio = if norm2 == 0.0 { 0.0 } else { q.norm() / norm2 };
        return Err(Error::SingularSpinor(ratio));
    }
    let s = q.scalar_part();
    let p = q.coeff(crate::clifford::Blade::PSEUDOSCALAR);
    let rho = s.hypot(p);
    let mut beta = p.atan2(s);
    if beta <= -std::f64::consts::PI {
        beta = std::f64::consts::PI;
    }
    let r = Mv::exp_pseudoscalar(-beta / 2.0) * v * (1.0 / rho.sqrt());
    // ψψ̃ has no other grades for even ψ, so R R̃ = 1 up to rounding
    let rotor = Rotor::new(r).or_else(|_| {
        let defect = (r * r.reverse()).scalar_part();
        Rotor::new(r * (1.0 / defect.sqrt()))
    })?;
    Ok(Polar { rho, beta, rotor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Blade, CMv};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn even_blades() -> Vec<Blade> {
        Blade::canonical()
            .into_iter()
            .filter(|b| b.grade() % 2 == 0)
            .collect()
    }

    #[test]
    fn project_one_gives_half_one_minus_gamma03() {
        let psi = SpinorEven::new(Mv::one()).unwrap();
        let f = weyl_project(&psi, Handedness::Plus);
        let expected = (Mv::one() - Mv::product_of(&[0, 3])) * 0.5;
        assert!(f.value.max_abs_diff(&expected) < 1e-15);
        assert!(null_check(&f) < 1e-15);
        assert!(chirality_residual(&f) < 1e-15);
    }

    #[test]
    fn project_zero_is_zero() {
        let psi = SpinorEven::new(Mv::zero()).unwrap();
        assert_eq!(weyl_project(&psi, Handedness::Minus).value, Mv::zero());
    }

    #[test]
    fn odd_input_rejected() {
        assert!(matches!(SpinorEven::new(Mv::gamma(1)), Err(Error::NotEven(_))));
    }

    #[test]
    fn projector_is_idempotent_on_each_even_blade() {
        for b in even_blades() {
            let psi = Mv::blade(b);
            for h in [Handedness::Plus, Handedness::Minus] {
                let once = project(&psi, h);
                assert!(project(&once, h).max_abs_diff(&once) < 1e-15);
                assert!(project(&once, h.flip()).max_abs() < 1e-15);
            }
            let sum = project(&psi, Handedness::Plus) + project(&psi, Handedness::Minus);
            assert_eq!(sum, psi);
        }
    }

    #[test]
    fn unprojected_scalar_fails_chirality_and_null() {
        let f = WeylValue::declared(Mv::one(), Handedness::Plus);
        assert!(chirality_residual(&f) > 0.5);
        assert_eq!(null_check(&f), 2.0);
        let z = WeylValue::declared(Mv::zero(), Handedness::Plus);
        assert_eq!(chirality_residual(&z), 0.0);
    }

    #[test]
    fn current_of_projected_value_is_null_vector() {
        let psi = SpinorEven::new(Mv::one()).unwrap();
        let f = weyl_project(&psi, Handedness::Plus);
        let j = current(&f.value);
        assert!(j.is_grade(1, 1e-15));
        assert!(j.dot(&j).abs() < 1e-15);
        assert_eq!(current(&Mv::zero()), Mv::zero());
    }

    #[test]
    fn parity_on_constant_bivectors() {
        let p = parity(|_p: Point4| Mv::product_of(&[0, 1]));
        assert_eq!(p([0.0, 1.0, 2.0, 3.0]), Mv::product_of(&[0, 1]));
        let q = parity(|_p: Point4| Mv::product_of(&[1, 2]));
        assert_eq!(q([0.0, 1.0, 2.0, 3.0]), -Mv::product_of(&[1, 2]));
    }

    #[test]
    fn parity_eigenstates_of_zero_are_zero() {
        let e = parity_eigenstates(|_p: Point4| Mv::zero());
        let p = [0.3, 0.1, 0.2, -0.4];
        assert_eq!(e.up(p), Mv::zero());
        assert_eq!(e.down(p), Mv::zero());
    }

    #[test]
    fn polar_of_scalar_and_pseudoscalar() {
        let two = polar_decompose(&SpinorEven::new(Mv::scalar(2.0)).unwrap()).unwrap();
        assert!((two.rho - 4.0).abs() < 1e-15);
        assert_eq!(two.beta, 0.0);
        assert!(two.rotor.value().max_abs_diff(&Mv::one()) < 1e-15);

        let g5 = polar_decompose(&SpinorEven::new(Mv::pseudoscalar()).unwrap()).unwrap();
        assert!((g5.rho - 1.0).abs() < 1e-15);
        assert!((g5.beta - PI).abs() < 1e-15);
        assert!(g5.reconstruct().max_abs_diff(&Mv::pseudoscalar()) < 1e-15);
    }

    #[test]
    fn polar_rejects_weyl_values() {
        let f = project(&Mv::one(), Handedness::Plus);
        let err = polar_decompose(&SpinorEven::new(f).unwrap()).unwrap_err();
        assert!(matches!(err, Error::SingularSpinor(_)));
    }

    #[test]
    fn rotor_validation() {
        assert!(Rotor::new(Mv::scalar(2.0)).is_err());
        assert!(Rotor::from_plane(1, 1, 0.3).is_err());
        let boost = Rotor::from_plane(0, 3, 0.7).unwrap();
        assert!(Rotor::new(*boost.value()).is_ok());
    }

    #[test]
    fn frame_change_identity_and_group_law() {
        let psi = SpinorEven::new(Mv::one() + Mv::product_of(&[1, 2]) * 0.3).unwrap();
        let u = Rotor::from_plane(1, 2, 0.4).unwrap();
        assert!(change_frame(&psi, &u, &u).value().max_abs_diff(psi.value()) < 1e-15);

        let a = Rotor::from_plane(0, 1, 0.2).unwrap();
        let b = Rotor::from_plane(2, 3, -0.5).unwrap();
        let c = Rotor::from_plane(0, 3, 0.9).unwrap();
        let two_step = change_frame(&change_frame(&psi, &a, &b), &b, &c);
        let direct = change_frame(&psi, &a, &c);
        assert!(two_step.value().max_abs_diff(direct.value()) < 1e-14);
    }

    #[test]
    fn complex_projection_matches_real_parts() {
        let re = Mv::one() + Mv::product_of(&[0, 1]);
        let im = Mv::product_of(&[2, 3]) - Mv::pseudoscalar();
        let z: CMv = re.to_complex() + im.to_complex() * Complex64::new(0.0, 1.0);
        let pz = project(&z, Handedness::Plus);
        assert!(pz.re().max_abs_diff(&project(&re, Handedness::Plus)) < 1e-15);
        assert!(pz.im().max_abs_diff(&project(&im, Handedness::Plus)) < 1e-15);
    }
}
