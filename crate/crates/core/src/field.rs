//! Field abstractions: scalar profiles with analytic derivatives and
//! multivector-valued functions of spacetime.

use num_complex::Complex64;

use crate::clifford::CMv;

/// Spacetime event `[t, x, y, z]`.
pub type Point4 = [f64; 4];

/// Complexified multivector field.
pub trait MultivectorField: Sync {
    fn at(&self, p: Point4) -> CMv;
}

impl<F> MultivectorField for F
where
    F: Fn(Point4) -> CMv + Sync,
{
    fn at(&self, p: Point4) -> CMv {
        self(p)
    }
}

/// Complex scalar field with analytic first derivatives, partials ordered
/// `∂t, ∂x, ∂y, ∂z`.
pub trait ScalarField: Sync {
    fn value(&self, p: Point4) -> Complex64;

    fn gradient(&self, p: Point4) -> [Complex64; 4];

    /// Analytic second derivatives, when the family provides them.
    fn hessian(&self, _p: Point4) -> Option<[[Complex64; 4]; 4]> {
        None
    }

    /// The Dirac derivative of the profile as a 1-form, `Σ γμ ∂μΦ`.
    fn gradient_vector(&self, p: Point4) -> CMv {
        CMv::vector(self.gradient(p))
    }
}

impl<T: ScalarField + ?Sized> ScalarField for &T {
    fn value(&self, p: Point4) -> Complex64 {
        (**self).value(p)
    }
    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        (**self).gradient(p)
    }
    fn hessian(&self, p: Point4) -> Option<[[Complex64; 4]; 4]> {
        (**self).hessian(p)
    }
}

impl<T: ScalarField + ?Sized> ScalarField for Box<T> {
    fn value(&self, p: Point4) -> Complex64 {
        (**self).value(p)
    }
    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        (**self).gradient(p)
    }
    fn hessian(&self, p: Point4) -> Option<[[Complex64; 4]; 4]> {
        (**self).hessian(p)
    }
}

/// Scalar field embedded as a grade-0 multivector field.
pub struct AsMultivector<F>(pub F);

impl<F: ScalarField> MultivectorField for AsMultivector<F> {
    fn at(&self, p: Point4) -> CMv {
        CMv::scalar(self.0.value(p))
    }
}

/// Complex constant added to a profile; handy for tests.
#[derive(Clone, Copy, Debug)]
pub struct Constant(pub Complex64);

impl ScalarField for Constant {
    fn value(&self, _p: Point4) -> Complex64 {
        self.0
    }
    fn gradient(&self, _p: Point4) -> [Complex64; 4] {
        [Complex64::new(0.0, 0.0); 4]
    }
    fn hessian(&self, _p: Point4) -> Option<[[Complex64; 4]; 4]> {
        Some([[Complex64::new(0.0, 0.0); 4]; 4])
    }
}
