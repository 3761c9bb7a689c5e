//! Clifford algebra of Minkowski spacetime, Cl(1,3), with metric diag(1,-1,-1,-1).
//!
//! Multivectors carry 16 coefficients indexed by basis blades. A blade is stored
//! as a bitmask over the generators `γ0..γ3`; its sign convention is the product
//! of generators in ascending index order, so `Blade::from_indices(&[2, 1])` is
//! `-γ1γ2` expressed in that basis. Scalars are either `f64` or `Complex64`
//! (the complexified algebra) through the [`Scalar`] trait.

mod matrix;
mod scalar;

pub use matrix::{from_matrix, gamma_matrix, mat_mul, matrix_rep, Mat4};
pub use scalar::Scalar;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Metric signature on the generators.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A basis blade, identified by the set of generators it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    /// Blade from its bitmask (bit `i` set means `γi` is a factor).
    pub fn from_mask(mask: u8) -> Result<Self> {
        if mask < 16 {
            Ok(Blade(mask))
        } else {
            Err(Error::InvalidBlade(format!("mask {mask} out of range")))
        }
    }

    /// Blade from a set of distinct generator indices. Order is irrelevant here;
    /// the sign of a non-ascending product is handled by [`Multivector::product_of`].
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &i in indices {
            if i > 3 {
                return Err(Error::InvalidBlade(format!("generator index {i} > 3")));
            }
            if mask & (1 << i) != 0 {
                return Err(Error::InvalidBlade(format!("repeated generator {i}")));
            }
            mask |= 1 << i;
        }
        Ok(Blade(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..4).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    /// All 16 blades in canonical order: by grade, then lexicographically
    /// (1, γ0, γ1, γ2, γ3, γ0γ1, γ0γ2, ..., γ0γ1γ2γ3).
    pub fn canonical() -> [Blade; 16] {
        CANONICAL
    }

    /// Sign picked up by reversing this blade.
    pub fn reverse_sign(self) -> f64 {
        let r = self.grade();
        if (r * r.saturating_sub(1) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "γ")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

const CANONICAL: [Blade; 16] = [
    Blade(0b0000),
    Blade(0b0001),
    Blade(0b0010),
    Blade(0b0100),
    Blade(0b1000),
    Blade(0b0011),
    Blade(0b0101),
    Blade(0b1001),
    Blade(0b0110),
    Blade(0b1010),
    Blade(0b1100),
    Blade(0b0111),
    Blade(0b1011),
    Blade(0b1101),
    Blade(0b1110),
    Blade(0b1111),
];

/// Sign of the product of two ascending-order blades `a` and `b`, including
/// the metric factors from repeated generators.
const fn blade_product_sign(a: u8, b: u8) -> i8 {
    let mut swaps = 0u32;
    let mut i = 0;
    while i < 4 {
        if b & (1 << i) != 0 {
            // generators of `a` with index greater than i must pass γi
            swaps += (a >> (i + 1)).count_ones();
        }
        i += 1;
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    let common = a & b;
    // γ1, γ2, γ3 square to -1
    let mut j = 1;
    while j < 4 {
        if common & (1 << j) != 0 {
            sign = -sign;
        }
        j += 1;
    }
    sign
}

const fn build_sign_table() -> [[i8; 16]; 16] {
    let mut table = [[0i8; 16]; 16];
    let mut a = 0;
    while a < 16 {
        let mut b = 0;
        while b < 16 {
            table[a][b] = blade_product_sign(a as u8, b as u8);
            b += 1;
        }
        a += 1;
    }
    table
}

static SIGN: [[i8; 16]; 16] = build_sign_table();

/// Element of Cl(1,3) (or its complexification) stored by blade bitmask.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector<S: Scalar = f64> {
    coeffs: [S; 16],
}

/// Real multivector.
pub type Mv = Multivector<f64>;
/// Complexified multivector.
pub type CMv = Multivector<Complex64>;

impl<S: Scalar> Default for Multivector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Multivector<S> {
    pub fn zero() -> Self {
        Self {
            coeffs: [S::zero(); 16],
        }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(s: S) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = s;
        m
    }

    /// Unit blade `γ_{i1}γ_{i2}...` in ascending-index sign convention.
    pub fn blade(b: Blade) -> Self {
        let mut m = Self::zero();
        m.coeffs[b.0 as usize] = S::one();
        m
    }

    /// Generator `γμ`.
    pub fn gamma(mu: usize) -> Self {
        assert!(mu < 4, "generator index {mu} out of range");
        Self::blade(Blade(1 << mu))
    }

    /// Ordered product of generators, e.g. `product_of(&[2, 1])` is `γ2γ1`.
    pub fn product_of(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::one(), |acc, &mu| acc * Self::gamma(mu))
    }

    /// Pseudoscalar `γ5 = γ0γ1γ2γ3`.
    pub fn pseudoscalar() -> Self {
        Self::blade(Blade::PSEUDOSCALAR)
    }

    /// 1-form `Σ v[μ] γμ`.
    pub fn vector(v: [S; 4]) -> Self {
        let mut m = Self::zero();
        for (mu, &c) in v.iter().enumerate() {
            m.coeffs[1 << mu] = c;
        }
        m
    }

    /// Coefficients indexed by blade bitmask.
    pub fn from_mask_array(coeffs: [S; 16]) -> Self {
        Self { coeffs }
    }

    pub fn as_mask_array(&self) -> &[S; 16] {
        &self.coeffs
    }

    /// Coefficients in canonical blade order (see [`Blade::canonical`]).
    pub fn to_canonical(&self) -> [S; 16] {
        let mut out = [S::zero(); 16];
        for (k, b) in CANONICAL.iter().enumerate() {
            out[k] = self.coeffs[b.0 as usize];
        }
        out
    }

    pub fn from_canonical(c: [S; 16]) -> Self {
        let mut m = Self::zero();
        for (k, b) in CANONICAL.iter().enumerate() {
            m.coeffs[b.0 as usize] = c[k];
        }
        m
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.coeffs[b.0 as usize]
    }

    pub fn set_coeff(&mut self, b: Blade, value: S) {
        self.coeffs[b.0 as usize] = value;
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0]
    }

    /// Components of the grade-1 part, `[c0, c1, c2, c3]`.
    pub fn vector_part(&self) -> [S; 4] {
        [
            self.coeffs[1],
            self.coeffs[2],
            self.coeffs[4],
            self.coeffs[8],
        ]
    }

    /// Projection onto grade `r`.
    pub fn grade(&self, r: usize) -> Result<Self> {
        if r > 4 {
            return Err(Error::InvalidGrade(r));
        }
        Ok(self.grade_unchecked(r))
    }

    pub(crate) fn grade_unchecked(&self, r: usize) -> Self {
        let mut out = Self::zero();
        for mask in 0..16usize {
            if (mask as u8).count_ones() as usize == r {
                out.coeffs[mask] = self.coeffs[mask];
            }
        }
        out
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(u8) -> bool) -> Self {
        let mut out = Self::zero();
        for mask in 0..16u8 {
            if keep(mask) {
                out.coeffs[mask as usize] = self.coeffs[mask as usize];
            }
        }
        out
    }

    /// Reverse: grade-r part scaled by (-1)^{r(r-1)/2}.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for mask in 0..16u8 {
            if Blade(mask).reverse_sign() < 0.0 {
                out.coeffs[mask as usize] = -out.coeffs[mask as usize];
            }
        }
        out
    }

    /// Grade involution: odd grades negated.
    pub fn involute(&self) -> Self {
        let mut out = *self;
        for mask in 0..16u8 {
            if mask.count_ones() % 2 == 1 {
                out.coeffs[mask as usize] = -out.coeffs[mask as usize];
            }
        }
        out
    }

    /// Product restricted to blade pairs satisfying `keep(grade_a, grade_b, grade_out)`.
    fn graded_product(&self, rhs: &Self, keep: impl Fn(u32, u32, u32) -> bool) -> Self {
        let mut out = Self::zero();
        for a in 0..16usize {
            let ca = self.coeffs[a];
            if ca == S::zero() {
                continue;
            }
            let ga = (a as u8).count_ones();
            for b in 0..16usize {
                let cb = rhs.coeffs[b];
                if cb == S::zero() {
                    continue;
                }
                let k = a ^ b;
                if !keep(ga, (b as u8).count_ones(), (k as u8).count_ones()) {
                    continue;
                }
                let term = ca * cb;
                if SIGN[a][b] > 0 {
                    out.coeffs[k] += term;
                } else {
                    out.coeffs[k] -= term;
                }
            }
        }
        out
    }

    /// Outer (wedge) product.
    pub fn wedge(&self, rhs: &Self) -> Self {
        self.graded_product(rhs, |ga, gb, gk| gk == ga + gb)
    }

    /// Left contraction `a ⌟ b`: grade `gb - ga` part of each blade product.
    pub fn left_contract(&self, rhs: &Self) -> Self {
        self.graded_product(rhs, |ga, gb, gk| gb >= ga && gk == gb - ga)
    }

    /// Right contraction `a ⌞ b`.
    pub fn right_contract(&self, rhs: &Self) -> Self {
        self.graded_product(rhs, |ga, gb, gk| ga >= gb && gk == ga - gb)
    }

    /// Scalar product of two 1-forms, `a·b = η(a, b)`.
    pub fn dot(&self, rhs: &Self) -> S {
        self.left_contract(rhs).scalar_part()
    }

    /// Coefficient (Euclidean) norm, `sqrt(Σ |c|²)`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = f(*c);
        }
        out
    }

    pub fn scale(&self, s: S) -> Self {
        self.map(|c| c * s)
    }

    pub fn is_even(&self, tol: f64) -> bool {
        self.odd_part().max_abs() <= tol
    }

    pub fn is_grade(&self, r: usize, tol: f64) -> bool {
        (*self - self.grade_unchecked(r)).max_abs() <= tol
    }

    pub fn to_complex(&self) -> CMv {
        let mut out = CMv::zero();
        for (o, c) in out.coeffs.iter_mut().zip(self.coeffs.iter()) {
            *o = c.to_complex();
        }
        out
    }

    /// `exp(θ γ5) = cos θ + γ5 sin θ`, using γ5² = -1.
    pub fn exp_pseudoscalar(theta: S) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = theta.cos();
        m.coeffs[15] = theta.sin();
        m
    }
}

impl Mv {
    /// Re-express real coefficients in another scalar field.
    pub fn cast<T: Scalar>(&self) -> Multivector<T> {
        let mut out = Multivector::<T>::zero();
        for (o, c) in out.coeffs.iter_mut().zip(self.coeffs.iter()) {
            *o = T::from_f64(*c);
        }
        out
    }
}

impl CMv {
    pub fn re(&self) -> Mv {
        let mut out = Mv::zero();
        for (o, c) in out.coeffs.iter_mut().zip(self.coeffs.iter()) {
            *o = c.re;
        }
        out
    }

    pub fn im(&self) -> Mv {
        let mut out = Mv::zero();
        for (o, c) in out.coeffs.iter_mut().zip(self.coeffs.iter()) {
            *o = c.im;
        }
        out
    }

    /// Complex conjugate of each coefficient.
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<S: Scalar> AddAssign for Multivector<S> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += *b;
        }
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<S: Scalar> SubAssign for Multivector<S> {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= *b;
        }
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c)
    }
}

/// Geometric product.
impl<S: Scalar> Mul for Multivector<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for a in 0..16usize {
            let ca = self.coeffs[a];
            if ca == S::zero() {
                continue;
            }
            let row = &SIGN[a];
            for b in 0..16usize {
                let cb = rhs.coeffs[b];
                if cb == S::zero() {
                    continue;
                }
                let term = ca * cb;
                if row[b] > 0 {
                    out.coeffs[a ^ b] += term;
                } else {
                    out.coeffs[a ^ b] -= term;
                }
            }
        }
        out
    }
}

impl<S: Scalar> Mul<S> for Multivector<S> {
    type Output = Self;
    fn mul(self, rhs: S) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for CMv {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.map(|c| c * rhs)
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in CANONICAL {
            let c = self.coeffs[b.0 as usize];
            if c == S::zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?}){b}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
