//! Closed-form solutions of the homogeneous wave equation `□Φ = 0` with
//! analytic gradients, and the dispersion and axicon kinematics that go with
//! them.
//!
//! Units have `c = ħ = 1`. A family's parameters satisfy one of the dispersion
//! relations `ω² - k² = Ω²` (subluminal) or `ω² - k² = -Ω²` (superluminal).

mod bessel;
mod infinite;
mod plane;
mod spherical;

pub use bessel::{eval_axicon, BesselBeam, ModifiedBesselBeam};
pub use infinite::{InfiniteSpeedBeam, InfiniteSpeedReading};
pub use plane::PlaneWave;
pub use spherical::SphericalBeam;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Subluminal,
    Superluminal,
}

impl Branch {
    /// Sign `s` in `ω² - k² = s Ω²`.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Subluminal => 1.0,
            Branch::Superluminal => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Subluminal => "subluminal",
            Branch::Superluminal => "superluminal",
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            Branch::Subluminal => "ω² − k² = Ω²",
            Branch::Superluminal => "ω² − k² = −Ω²",
        }
    }
}

/// A point on one dispersion branch; `ω, k, Ω ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionBranch {
    pub branch: Branch,
    pub omega: f64,
    pub k: f64,
    #[serde(rename = "Omega")]
    pub big_omega: f64,
}

/// Two of the three quantities `ω, k, Ω`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Given {
    OmegaK { omega: f64, k: f64 },
    OmegaBigOmega { omega: f64, big_omega: f64 },
    KBigOmega { k: f64, big_omega: f64 },
}

impl DispersionBranch {
    /// `dω/dk = k/ω`.
    pub fn group_velocity(&self) -> f64 {
        if self.omega == 0.0 {
            f64::INFINITY
        } else {
            self.k / self.omega
        }
    }

    /// `ω/k`.
    pub fn phase_velocity(&self) -> f64 {
        if self.k == 0.0 {
            f64::INFINITY
        } else {
            self.omega / self.k
        }
    }

    /// `ω² - k² - sΩ²`.
    pub fn defect(&self) -> f64 {
        self.omega * self.omega - self.k * self.k - self.branch.sign() * self.big_omega * self.big_omega
    }

    /// Checks the relation to a relative tolerance of `1e-12`.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("ω", self.omega), ("k", self.k), ("Ω", self.big_omega)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Dispersion(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        let scale = (self.omega * self.omega).max(self.k * self.k).max(self.big_omega * self.big_omega).max(1e-300);
        if self.defect().abs() > 1e-12 * scale {
            return Err(Error::Dispersion(format!(
                "ω = {}, k = {}, Ω = {} violate the {} relation {}",
                self.omega,
                self.k,
                self.big_omega,
                self.branch.name(),
                self.branch.relation()
            )));
        }
        Ok(())
    }
}

/// Fills in the third of `ω, k, Ω` on the given branch.
pub fn dispersion_solve(branch: Branch, given: Given) -> Result<DispersionBranch> {
    let s = branch.sign();
    let fail = |what: String| {
        Error::Dispersion(format!("{what}; the {} branch requires {}", branch.name(), branch.relation()))
    };
    let check = |name: &str, v: f64| -> Result<()> {
        if v.is_finite() && v >= 0.0 {
            Ok(())
        } else {
            Err(Error::Dispersion(format!("{name} = {v} must be finite and non-negative")))
        }
    };
    let out = match given {
        Given::OmegaK { omega, k } => {
            check("ω", omega)?;
            check("k", k)?;
            let sq = s * (omega * omega - k * k);
            if sq < 0.0 {
                return Err(fail(format!("ω = {omega}, k = {k} give Ω² = {sq} < 0")));
            }
            DispersionBranch { branch, omega, k, big_omega: sq.sqrt() }
        }
        Given::OmegaBigOmega { omega, big_omega } => {
            check("ω", omega)?;
            check("Ω", big_omega)?;
            let sq = omega * omega - s * big_omega * big_omega;
            if sq < 0.0 {
                return Err(fail(format!("ω = {omega}, Ω = {big_omega} give k² = {sq} < 0")));
            }
            DispersionBranch { branch, omega, k: sq.sqrt(), big_omega }
        }
        Given::KBigOmega { k, big_omega } => {
            check("k", k)?;
            check("Ω", big_omega)?;
            let sq = k * k + s * big_omega * big_omega;
            if sq < 0.0 {
                return Err(fail(format!("k = {k}, Ω = {big_omega} give ω² = {sq} < 0")));
            }
            DispersionBranch { branch, omega: sq.sqrt(), k, big_omega }
        }
    };
    Ok(out)
}

/// Axicon angle `η = arccos(1/v)` of a wave whose phase speed is `v > 1`.
pub fn axicon_fit(v: f64) -> Result<f64> {
    if !(v > 1.0) || !v.is_finite() {
        return Err(Error::Domain(format!("axicon fit needs a finite speed v > 1, got {v}")));
    }
    Ok((1.0 / v).acos())
}

/// Axicon parametrisation `k = k̄ cos η`, `Ω = k̄ sin η`, `ω = k̄`.
pub fn axicon_dispersion(kbar: f64, eta: f64) -> Result<DispersionBranch> {
    if !(eta > 0.0 && eta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("axicon angle η = {eta} outside (0, π/2)")));
    }
    if !(kbar > 0.0) || !kbar.is_finite() {
        return Err(Error::Domain(format!("k̄ = {kbar} must be positive")));
    }
    Ok(DispersionBranch {
        branch: Branch::Subluminal,
        omega: kbar,
        k: kbar * eta.cos(),
        big_omega: kbar * eta.sin(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassClass {
    Massive,
    Massless,
    Tachyonic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub energy: f64,
    pub momentum: f64,
    /// `E² - p²`.
    pub mass_squared: f64,
    pub class: MassClass,
}

/// `E = ω`, `|p| = |k|` with `ħ = 1`.
pub fn quantum_numbers(omega: f64, k: f64) -> QuantumNumbers {
    let energy = omega;
    let momentum = k.abs();
    let mass_squared = energy * energy - momentum * momentum;
    let tol = 1e-12 * (energy * energy).max(momentum * momentum);
    let class = if mass_squared.abs() <= tol {
        MassClass::Massless
    } else if mass_squared > 0.0 {
        MassClass::Massive
    } else {
        MassClass::Tachyonic
    };
    QuantumNumbers { energy, momentum, mass_squared, class }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn subluminal_triple() {
        let d = dispersion_solve(Branch::Subluminal, Given::OmegaBigOmega { omega: 5.0, big_omega: 3.0 }).unwrap();
        assert_eq!(d.k, 4.0);
        assert_eq!(d.group_velocity(), 0.8);
        assert_eq!(d.phase_velocity(), 1.25);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn superluminal_triple() {
        let d = dispersion_solve(Branch::Superluminal, Given::KBigOmega { k: 5.0, big_omega: 3.0 }).unwrap();
        assert_eq!(d.omega, 4.0);
        assert_eq!(d.group_velocity(), 1.25);
        assert_eq!(d.phase_velocity(), 0.8);
    }

    #[test]
    fn luminal_degenerate() {
        let d = dispersion_solve(Branch::Subluminal, Given::OmegaK { omega: 2.0, k: 2.0 }).unwrap();
        assert_eq!(d.big_omega, 0.0);
        assert_eq!(d.group_velocity(), 1.0);
        assert_eq!(d.phase_velocity(), 1.0);
    }

    #[test]
    fn impossible_triples_name_the_relation() {
        let e = dispersion_solve(Branch::Subluminal, Given::OmegaBigOmega { omega: 2.0, big_omega: 3.0 }).unwrap_err();
        assert!(e.to_string().contains("ω² − k² = Ω²"), "{e}");
        assert!(dispersion_solve(Branch::Superluminal, Given::OmegaK { omega: 5.0, k: 4.0 }).is_err());
        assert!(dispersion_solve(Branch::Subluminal, Given::OmegaK { omega: -1.0, k: 0.0 }).is_err());
    }

    #[test]
    fn validate_rejects_off_shell() {
        let d = DispersionBranch { branch: Branch::Subluminal, omega: 5.0, k: 4.0, big_omega: 2.0 };
        assert!(d.validate().is_err());
    }

    #[test]
    fn axicon_angles() {
        assert!((axicon_fit(2.0).unwrap() - FRAC_PI_3).abs() < 1e-15);
        assert!(axicon_fit(1.0 + 1e-12).unwrap() < 2e-6);
        assert!(axicon_fit(1.0).is_err());
        assert!(axicon_fit(0.5).is_err());
        assert!(axicon_fit(f64::INFINITY).is_err());
        let d = axicon_dispersion(3.0, FRAC_PI_4).unwrap();
        assert!(d.validate().is_ok());
        assert!((d.phase_velocity() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn group_times_phase_is_one() {
        for (w, k) in [(5.0, 4.0), (4.0, 5.0), (1.3, 0.2)] {
            let b = if w > k { Branch::Subluminal } else { Branch::Superluminal };
            let d = dispersion_solve(b, Given::OmegaK { omega: w, k }).unwrap();
            assert!((d.group_velocity() * d.phase_velocity() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn quantum_number_classes() {
        let q = quantum_numbers(5.0, 4.0);
        assert_eq!((q.energy, q.momentum, q.mass_squared, q.class), (5.0, 4.0, 9.0, MassClass::Massive));
        let q = quantum_numbers(4.0, -5.0);
        assert_eq!((q.mass_squared, q.class), (-9.0, MassClass::Tachyonic));
        assert_eq!(quantum_numbers(3.0, 3.0).class, MassClass::Massless);
    }
}
