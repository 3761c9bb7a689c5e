//! Candidate closed forms for the spherical beam in the limit `v → ∞`.

use num_complex::Complex64;

use crate::error::Result;
use crate::field::{Point4, ScalarField};
use crate::special::spherical_reduced;

use super::SphericalBeam;

/// Reading of the infinite-speed spherical beam.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfiniteSpeedReading {
    /// `sinh(ρ)/ρ · e^{iΩz}` with cylindrical `ρ`.
    Literal,
    /// `sinh(Ωρ)/ρ · e^{iΩz}`.
    Scaled,
    /// The `v → ∞` limit of the superluminal beam:
    /// `sin(Ω√(t² - ρ²))/√(t² - ρ²) · e^{-iΩz}`; at `t = 0` it equals
    /// `sinh(Ωρ)/ρ · e^{-iΩz}`.
    Limit,
}

impl InfiniteSpeedReading {
    pub fn all() -> [Self; 3] {
        [Self::Literal, Self::Scaled, Self::Limit]
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Literal => "sinh(rho)/rho",
            Self::Scaled => "sinh(Omega rho)/rho",
            Self::Limit => "limit v->inf",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfiniteSpeedBeam {
    pub reading: InfiniteSpeedReading,
    pub big_omega: f64,
    pub amplitude: f64,
    limit: Option<SphericalBeam>,
}

impl InfiniteSpeedBeam {
    pub fn new(reading: InfiniteSpeedReading, big_omega: f64, amplitude: f64) -> Result<Self> {
        let limit = match reading {
            InfiniteSpeedReading::Limit => Some(SphericalBeam::fundamental(big_omega, f64::INFINITY, amplitude)?),
            _ => None,
        };
        Ok(Self { reading, big_omega, amplitude, limit })
    }

    /// `a` in `sinh(aρ)/ρ`.
    fn rate(&self) -> f64 {
        match self.reading {
            InfiniteSpeedReading::Literal => 1.0,
            _ => self.big_omega,
        }
    }
}

impl ScalarField for InfiniteSpeedBeam {
    fn value(&self, p: Point4) -> Complex64 {
        if let Some(b) = &self.limit {
            return b.value(p);
        }
        let a = self.rate();
        let rho2 = p[1] * p[1] + p[2] * p[2];
        // sinh(aρ)/ρ = a g_0(-a²ρ²)
        let radial = a * spherical_reduced(0, -a * a * rho2);
        self.amplitude * radial * Complex64::from_polar(1.0, self.big_omega * p[3])
    }

    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        if let Some(b) = &self.limit {
            return b.gradient(p);
        }
        let a = self.rate();
        let rho2 = p[1] * p[1] + p[2] * p[2];
        let radial = a * spherical_reduced(0, -a * a * rho2);
        // ∂x [a g_0(-a²ρ²)] = a³ x g_1(-a²ρ²)
        let d = a * a * a * spherical_reduced(1, -a * a * rho2);
        let ph = Complex64::from_polar(self.amplitude, self.big_omega * p[3]);
        [
            Complex64::new(0.0, 0.0),
            ph * d * p[1],
            ph * d * p[2],
            ph * radial * Complex64::new(0.0, self.big_omega),
        ]
    }
}
