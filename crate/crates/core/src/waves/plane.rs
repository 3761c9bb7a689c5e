use num_complex::Complex64;

use crate::field::{Point4, ScalarField};

/// `A exp(i(k·x - ωt))`; a wave-equation solution when `ω² = |k|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave {
    pub omega: f64,
    pub k: [f64; 3],
    pub amplitude: Complex64,
}

impl PlaneWave {
    /// Luminal wave of frequency `ω` along the unit vector `dir`.
    pub fn luminal(omega: f64, dir: [f64; 3]) -> Self {
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        Self {
            omega,
            k: [omega * dir[0] / n, omega * dir[1] / n, omega * dir[2] / n],
            amplitude: Complex64::new(1.0, 0.0),
        }
    }

    /// Wave-vector components multiplying `i` in `∂μΦ = i κμ Φ`.
    fn kappa(&self) -> [f64; 4] {
        [-self.omega, self.k[0], self.k[1], self.k[2]]
    }
}

impl ScalarField for PlaneWave {
    fn value(&self, p: Point4) -> Complex64 {
        let phase = self.k[0] * p[1] + self.k[1] * p[2] + self.k[2] * p[3] - self.omega * p[0];
        self.amplitude * Complex64::from_polar(1.0, phase)
    }

    fn gradient(&self, p: Point4) -> [Complex64; 4] {
        let v = self.value(p);
        self.kappa().map(|c| Complex64::new(0.0, c) * v)
    }

    fn hessian(&self, p: Point4) -> Option<[[Complex64; 4]; 4]> {
        let v = self.value(p);
        let k = self.kappa();
        Some(std::array::from_fn(|a| std::array::from_fn(|b| -k[a] * k[b] * v)))
    }
}
