//! Generalized potentials `𝒜 = A + γ5 B` and the Weyl fields they generate.
//!
//! For the separable potential `𝒜 = Υ (m + γ5 n)` with constant 1-forms `m`,
//! `n`, the field is `F = ∂𝒜 = (∂Υ)(m + γ5 n)` and `∂F = (□Υ)(m + γ5 n)`, so
//! every wave-equation solution `Υ` gives a solution of `∂F = 0`.
//!
//! With `m_0 = m_3 = n_0 = n_3 = 0`, the field has definite handedness when
//! `m_1 = ±n_2` and `m_2 = ∓n_1` (upper signs for `+`). The two presets fix
//! either `m` from `n` or `n` from `m`.

use num_complex::Complex64;

use crate::clifford::{CMv, Multivector, Mv, Scalar};
use crate::error::{Error, Result};
use crate::field::{MultivectorField, Point4, ScalarField};
use crate::spinor::{gamma21, project, Handedness, WeylValue};

/// Which pair of components a preset takes as input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintPreset {
    /// Given `n = (0, n_1, n_2, 0)`, set `m = ±(0, n_2, -n_1, 0)`.
    FromB,
    /// Given `m = (0, m_1, m_2, 0)`, set `n = ±(0, -m_2, m_1, 0)`.
    FromA,
}

/// `𝒜 = Υ (m + γ5 n)` with `m · n = 0`.
#[derive(Clone, Debug)]
pub struct GeneralizedPotential<U> {
    pub upsilon: U,
    m: Mv,
    n: Mv,
}

fn require_vector(v: &Mv, name: &str) -> Result<()> {
    if !v.is_grade(1, 0.0) {
        return Err(Error::WrongGrade {
            grade: 1,
            what: format!("{name} must be a constant 1-form"),
        });
    }
    Ok(())
}

impl<U: ScalarField> GeneralizedPotential<U> {
    pub fn new(upsilon: U, m: Mv, n: Mv) -> Result<Self> {
        require_vector(&m, "m")?;
        require_vector(&n, "n")?;
        let dot = m.dot(&n);
        if dot.abs() > 1e-14 * m.norm() * n.norm() {
            return Err(Error::Constraint(format!("m·n = 0 is violated (m·n = {dot:e})")));
        }
        Ok(Self { upsilon, m, n })
    }

    /// Preset satisfying the handedness constraints for `h`; `(c1, c2)` are
    /// the free transverse components.
    pub fn preset(upsilon: U, h: Handedness, preset: ConstraintPreset, c1: f64, c2: f64) -> Result<Self> {
        let s = h.sign();
        let (m, n) = match preset {
            ConstraintPreset::FromB => ([0.0, s * c2, -s * c1, 0.0], [0.0, c1, c2, 0.0]),
            ConstraintPreset::FromA => ([0.0, c1, c2, 0.0], [0.0, -s * c2, s * c1, 0.0]),
        };
        Self::new(upsilon, Mv::vector(m), Mv::vector(n))
    }

    pub fn m(&self) -> &Mv {
        &self.m
    }

    pub fn n(&self) -> &Mv {
        &self.n
    }

    /// `m + γ5 n`.
    pub fn factor(&self) -> CMv {
        (self.m + Mv::pseudoscalar() * self.n).to_complex()
    }

    /// `𝒜(p)`.
    pub fn at(&self, p: Point4) -> CMv {
        self.factor() * self.upsilon.value(p)
    }

    /// The 1-forms `(A, B)` at `p`.
    pub fn components(&self, p: Point4) -> (CMv, CMv) {
        let u = self.upsilon.value(p);
        (self.m.to_complex() * u, self.n.to_complex() * u)
    }

    /// Checks the component constraints that make `∂𝒜` a Weyl field of
    /// handedness `h`, naming the first one that fails.
    pub fn check_constraints(&self, h: Handedness) -> Result<()> {
        let [m0, m1, m2, m3] = self.m.vector_part();
        let [n0, n1, n2, n3] = self.n.vector_part();
        let scale = 1e-14 * (self.m.norm() + self.n.norm()).max(1.0);
        if m0.abs() > scale || m3.abs() > scale || n0.abs() > scale || n3.abs() > scale {
            return Err(Error::Constraint("A₀ = A₃ = B₀ = B₃ = 0 is violated".into()));
        }
        let s = h.sign();
        let (upper, lower) = match h {
            Handedness::Plus => ("A₂ = −B₁", "A₁ = +B₂"),
            Handedness::Minus => ("A₂ = +B₁", "A₁ = −B₂"),
        };
        if (m2 + s * n1).abs() > scale {
            return Err(Error::Constraint(format!("{upper} is violated for handedness {h:?}")));
        }
        if (m1 - s * n2).abs() > scale {
            return Err(Error::Constraint(format!("{lower} is violated for handedness {h:?}")));
        }
        Ok(())
    }
}

/// `ψ = ∂𝒜 = (∂Υ)(m + γ5 n)`, an even field.
pub fn dirac_potential<U: ScalarField>(p: &GeneralizedPotential<U>) -> impl Fn(Point4) -> CMv + Sync + '_ {
    let factor = p.factor();
    move |x| p.upsilon.gradient_vector(x) * factor
}

/// Weyl field `F± = ∂𝒜′±` of a constrained separable potential.
#[derive(Clone, Debug)]
pub struct WeylField<U> {
    potential: GeneralizedPotential<U>,
    handedness: Handedness,
    factor: CMv,
}

pub fn weyl_from_potential<U: ScalarField>(p: GeneralizedPotential<U>, h: Handedness) -> Result<WeylField<U>> {
    p.check_constraints(h)?;
    let factor = p.factor();
    Ok(WeylField { potential: p, handedness: h, factor })
}

impl<U: ScalarField> WeylField<U> {
    pub fn handedness(&self) -> Handedness {
        self.handedness
    }

    pub fn potential(&self) -> &GeneralizedPotential<U> {
        &self.potential
    }

    pub fn value(&self, p: Point4) -> WeylValue<Complex64> {
        WeylValue::declared(self.at(p), self.handedness)
    }

    /// Analytic `∂F = (□Υ)(m + γ5 n)` when `Υ` provides second derivatives.
    pub fn derivative(&self, p: Point4) -> Option<CMv> {
        let h = self.potential.upsilon.hessian(p)?;
        let box_u = h[0][0] - h[1][1] - h[2][2] - h[3][3];
        Some(self.factor * box_u)
    }

    /// `∂μ F = (∂μ ∂Υ)(m + γ5 n)` for each `μ`.
    pub fn partials(&self, p: Point4) -> Option<[CMv; 4]> {
        let h = self.potential.upsilon.hessian(p)?;
        Some(std::array::from_fn(|mu| CMv::vector(h[mu]) * self.factor))
    }
}

impl<U: ScalarField> MultivectorField for WeylField<U> {
    fn at(&self, p: Point4) -> CMv {
        self.potential.upsilon.gradient_vector(p) * self.factor
    }
}

/// `(A′±, B′±)` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HandednessSplit<S: Scalar = f64> {
    pub a: Multivector<S>,
    pub b: Multivector<S>,
}

fn check_pair<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> Result<()> {
    for (v, name) in [(a, "A"), (b, "B")] {
        if !v.is_grade(1, 1e-14 * v.norm().max(1.0)) {
            return Err(Error::WrongGrade {
                grade: 1,
                what: format!("{name} must be a 1-form"),
            });
        }
    }
    Ok(())
}

/// The displayed split
/// `2A′± = A ± A⌟γ03 ± B⌟γ21`, `2B′± = B ∓ A⌟γ21 ± B⌟γ03`, with `⌟` the left
/// contraction of the 1-form onto the bivector.
///
/// Under this crate's conventions `∂` of this `A′± + γ5 B′±` is the Weyl part
/// of the opposite handedness; [`projected_potential`] gives the split whose
/// derivative is `P±(∂𝒜)`.
pub fn split_potential<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>, h: Handedness) -> Result<HandednessSplit<S>> {
    check_pair(a, b)?;
    let g03 = Multivector::<S>::product_of(&[0, 3]);
    let g21 = gamma21::<S>();
    let s = S::from_f64(h.sign());
    let half = S::from_f64(0.5);
    let a2 = (*a + (a.left_contract(&g03) + b.left_contract(&g21)) * s) * half;
    let b2 = (*b + (b.left_contract(&g03) - a.left_contract(&g21)) * s) * half;
    Ok(HandednessSplit { a: a2, b: b2 })
}

/// `𝒜′± = ½(𝒜 ± γ5 𝒜 γ21)`, so that `∂𝒜′± = P±(∂𝒜)` for every `(A, B)`.
pub fn projected_potential<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>, h: Handedness) -> Result<HandednessSplit<S>> {
    check_pair(a, b)?;
    let g5 = Multivector::<S>::pseudoscalar();
    let calligraphic = *a + g5 * *b;
    // ∂ anticommutes with γ5, so the sign is opposite to the field projector
    let proj = project(&calligraphic, h.flip());
    let a2 = proj.grade_unchecked(1);
    let b2 = -(g5 * proj.grade_unchecked(3));
    Ok(HandednessSplit { a: a2, b: b2 })
}

impl<S: Scalar> HandednessSplit<S> {
    /// `A′ + γ5 B′`.
    pub fn combined(&self) -> Multivector<S> {
        self.a + Multivector::pseudoscalar() * self.b
    }
}
