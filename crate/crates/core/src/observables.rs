//! Energy-momentum 1-forms `T†μ = ⟨∂μF γ2γ1γ0 F̃⟩₁`, the energy density
//! `T00 = T†0 · γ0`, and energies over balls and cylinders.
//!
//! The formula is real-bilinear, while the wave families are complex. A
//! [`Reading`] fixes how a complexified field is mapped to a real even one
//! first. The default identifies the unit imaginary with right multiplication
//! by `γ2γ1`, as for Dirac-Hestenes spinors; it commutes with `∂`, so Weyl
//! solutions stay solutions. The real part is offered as the other reading.

use serde::Serialize;

use crate::calculus::Scheme;
use crate::clifford::{CMv, Mv};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{MultivectorField, Point4, ScalarField};
use crate::potential::WeylField;
use crate::quadrature::GaussLegendre;
use crate::spinor::gamma21;

/// Map from complexified to real multivectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `Re F + (Im F) γ2γ1`.
    #[default]
    DiracHestenes,
    /// `Re F`.
    RealPart,
}

impl Reading {
    pub fn apply(self, f: &CMv) -> Mv {
        match self {
            Reading::DiracHestenes => f.re() + f.im() * gamma21::<f64>(),
            Reading::RealPart => f.re(),
        }
    }
}

/// `T†μ` at one event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StressEnergy {
    /// Grade-1 projections `T†0..T†3`.
    pub t: [Mv; 4],
    /// `T†0 · γ0`.
    pub t00: f64,
    /// Largest grade-3 norm discarded by the projection.
    pub grade3: f64,
    /// Largest norm outside grades 1 and 3 (zero up to rounding).
    pub leakage: f64,
}

impl StressEnergy {
    /// `T†μ · γν`.
    pub fn component(&self, mu: usize, nu: usize) -> f64 {
        self.t[mu].dot(&Mv::gamma(nu))
    }

    /// `max |T†μ·γν - T†ν·γμ|`.
    pub fn asymmetry(&self) -> f64 {
        let mut a: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                a = a.max((self.component(mu, nu) - self.component(nu, mu)).abs());
            }
        }
        a
    }
}

/// Energy-momentum 1-forms from a field value and its four partials.
pub fn stress_energy_from(value: &CMv, partials: &[CMv; 4], reading: Reading) -> StressEnergy {
    let f = reading.apply(value);
    let right = gamma21::<f64>() * Mv::gamma(0) * f.reverse();
    let mut t = [Mv::zero(); 4];
    let mut grade3: f64 = 0.0;
    let mut leakage: f64 = 0.0;
    for mu in 0..4 {
        let full = reading.apply(&partials[mu]) * right;
        t[mu] = full.grade_unchecked(1);
        let g3 = full.grade_unchecked(3);
        grade3 = grade3.max(g3.norm());
        leakage = leakage.max((full - t[mu] - g3).norm());
    }
    let t00 = t[0].dot(&Mv::gamma(0));
    StressEnergy { t, t00, grade3, leakage }
}

/// Stress-energy from the analytic second derivatives of the profile.
pub fn stress_energy<U: ScalarField>(f: &WeylField<U>, p: Point4, reading: Reading) -> Result<StressEnergy> {
    let partials = f
        .partials(p)
        .ok_or_else(|| Error::Domain("the profile has no analytic second derivatives; use the difference path".into()))?;
    Ok(stress_energy_from(&f.at(p), &partials, reading))
}

/// Stress-energy with `∂μF` from central differences of step `h`.
pub fn stress_energy_fd<F: MultivectorField + ?Sized>(
    f: &F,
    p: Point4,
    h: f64,
    scheme: Scheme,
    reading: Reading,
) -> StressEnergy {
    let partials = std::array::from_fn(|mu| {
        let step = |k: f64| {
            let mut q = p;
            q[mu] += k * h;
            f.at(q)
        };
        match scheme {
            Scheme::Order2 => (step(1.0) - step(-1.0)) * (0.5 / h),
            Scheme::Order4 => {
                (step(1.0) - step(-1.0)) * (2.0 / (3.0 * h)) - (step(2.0) - step(-2.0)) * (1.0 / (12.0 * h))
            }
        }
    });
    stress_energy_from(&f.at(p), &partials, reading)
}

/// Integration region at fixed `t`, centred on the z-axis at `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    /// Ball of radius `R`.
    Ball { radius: f64 },
    /// Cylinder of radius `R` and length `2·half_length`.
    Cylinder { radius: f64, half_length: f64 },
}

impl Region {
    pub fn radius(&self) -> f64 {
        match *self {
            Region::Ball { radius } | Region::Cylinder { radius, .. } => radius,
        }
    }

    pub fn with_radius(&self, r: f64) -> Self {
        match *self {
            Region::Ball { .. } => Region::Ball { radius: r },
            Region::Cylinder { half_length, .. } => Region::Cylinder { radius: r, half_length },
        }
    }
}

/// Cylindrical product rule: composite Gauss-Legendre in `ρ` and `z`,
/// trapezoid in `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyRule {
    /// Gauss-Legendre points per panel.
    pub order: usize,
    /// Panels per unit length in `ρ` and `z`.
    pub panels_per_unit: f64,
    pub theta_points: usize,
}

impl Default for EnergyRule {
    fn default() -> Self {
        Self { order: 8, panels_per_unit: 4.0, theta_points: 16 }
    }
}

fn panels(rule: &EnergyRule, length: f64) -> usize {
    ((length * rule.panels_per_unit).ceil() as usize).max(1)
}

fn composite(gl: &GaussLegendre, a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    let w = (b - a) / n as f64;
    (0..n)
        .flat_map(|i| {
            let lo = a + i as f64 * w;
            gl.mapped(lo, lo + w).collect::<Vec<_>>()
        })
        .collect()
}

/// `∫ density dx dy dz` over `region` at time `t`. Parallel over radial nodes,
/// summed in order.
pub fn energy_integral<D>(density: D, t: f64, region: Region, rule: &EnergyRule, exec: Exec) -> Result<f64>
where
    D: Fn(Point4) -> f64 + Sync + Send,
{
    let r = region.radius();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("window radius R = {r} must be positive")));
    }
    let gl = GaussLegendre::new(rule.order);
    // In a ball the z-extent has a square-root edge in ρ; ρ = R sin φ removes it.
    let rho_nodes: Vec<(f64, f64)> = match region {
        Region::Ball { .. } => composite(&gl, 0.0, std::f64::consts::FRAC_PI_2, panels(rule, r))
            .into_iter()
            .map(|(phi, w)| (r * phi.sin(), w * r * phi.cos()))
            .collect(),
        Region::Cylinder { .. } => composite(&gl, 0.0, r, panels(rule, r)),
    };
    let dtheta = 2.0 * std::f64::consts::PI / rule.theta_points as f64;
    let rings = exec.map_slice(&rho_nodes, |&(rho, wr)| {
        let zmax = match region {
            Region::Ball { radius } => (radius * radius - rho * rho).max(0.0).sqrt(),
            Region::Cylinder { half_length, .. } => half_length,
        };
        if zmax == 0.0 {
            return 0.0;
        }
        let mut ring = 0.0;
        for (z, wz) in composite(&gl, -zmax, zmax, panels(rule, 2.0 * zmax)) {
            let mut circle = 0.0;
            for k in 0..rule.theta_points {
                let th = k as f64 * dtheta;
                circle += density([t, rho * th.cos(), rho * th.sin(), z]);
            }
            ring += wz * circle * dtheta;
        }
        ring * wr * rho
    });
    let total: f64 = rings.iter().sum();
    if !total.is_finite() {
        return Err(Error::Quadrature { achieved: f64::INFINITY, requested: 0.0 });
    }
    Ok(total)
}

/// Growth of `ℰ(R)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "class", content = "exponent", rename_all = "lowercase")]
pub enum EnergyClass {
    /// Flat to `1e-3` between the two largest windows.
    Bounded,
    /// Power-law exponent above 0.5 over the sweep.
    Divergent(f64),
    /// Growing, but with exponent at most 0.5.
    Power(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyReport {
    pub t: f64,
    pub region: Region,
    pub rule: EnergyRule,
    pub radii: Vec<f64>,
    pub energies: Vec<f64>,
    /// Log-log slope of `|ℰ|` against `R`; zero for a vanishing field.
    pub exponent: f64,
    pub class: EnergyClass,
}

/// Relative change below which `ℰ(R)` counts as flat.
pub const FLAT_TOLERANCE: f64 = 1e-3;
/// Exponent above which `ℰ(R)` counts as divergent.
pub const DIVERGENCE_EXPONENT: f64 = 0.5;

/// `ℰ(R)` for each radius, with the growth classification.
pub fn energy_sweep<D>(density: D, t: f64, region: Region, radii: &[f64], rule: &EnergyRule, exec: Exec) -> Result<EnergyReport>
where
    D: Fn(Point4) -> f64 + Sync + Send,
{
    if radii.len() < 2 {
        return Err(Error::Domain("an energy sweep needs at least two radii".into()));
    }
    let energies = radii
        .iter()
        .map(|&r| energy_integral(&density, t, region.with_radius(r), rule, exec))
        .collect::<Result<Vec<f64>>>()?;
    let scale = energies.iter().map(|e| e.abs()).fold(0.0, f64::max);
    let n = energies.len();
    let (exponent, class) = if scale < 1e-300 {
        (0.0, EnergyClass::Bounded)
    } else {
        let pts: Vec<(f64, f64)> = radii
            .iter()
            .zip(&energies)
            .filter(|(_, e)| e.abs() > 1e-14 * scale)
            .map(|(r, e)| (r.ln(), e.abs().ln()))
            .collect();
        let exponent = slope(&pts);
        let last = energies[n - 1];
        let prev = energies[n - 2];
        let class = if (last - prev).abs() <= FLAT_TOLERANCE * last.abs().max(prev.abs()) {
            EnergyClass::Bounded
        } else if exponent > DIVERGENCE_EXPONENT {
            EnergyClass::Divergent(exponent)
        } else {
            EnergyClass::Power(exponent)
        };
        (exponent, class)
    };
    Ok(EnergyReport { t, region, rule: *rule, radii: radii.to_vec(), energies, exponent, class })
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Energy density of a constructed Weyl field, analytic path.
pub fn energy_density<U: ScalarField>(f: &WeylField<U>, reading: Reading) -> impl Fn(Point4) -> f64 + Sync + Send + '_ {
    move |p| stress_energy(f, p, reading).map(|s| s.t00).unwrap_or(f64::NAN)
}
