//! Gated superluminal X-pulse.
//!
//! On the plane `z = 0` the pulse is the gated aperture signal
//! `Ψ(t, ρ, 0) = T(t) ∫ D(ω) J0(ωρ sin η) e^{-iωt} dω` with
//! `T(t) = Θ(t + T) - Θ(t - T)`. In the half-space it is
//! `Ψ(t, ρ, z) = ∫ D(ω) J0(ωρ sin η) e^{-iωτ} dω` for `|τ| < T` and zero
//! otherwise, where `τ = t - z cos η`. The support is the sheet `|τ| < T`,
//! whose leading edge `z = (t + T)/cos η` moves at `1/cos η`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{Point4, ScalarField};
use crate::quadrature::integrate_adaptive;
use crate::special::bessel_j;

/// Largest panel count tried by the adaptive frequency quadrature.
const MAX_PANELS: usize = 1 << 12;

/// Truncated Gaussian frequency distribution
/// `D(ω) = exp(-(ω - ω0)² / 2σ²)` on `|ω - ω0| ≤ cutoff·σ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub omega0: f64,
    pub sigma: f64,
    /// Truncation half-width in units of `σ`.
    pub cutoff: f64,
    /// Relative tolerance of the frequency quadrature.
    pub tol: f64,
}

impl Default for Spectrum {
    fn default() -> Self {
        Self { omega0: 10.0, sigma: 0.5, cutoff: 6.0, tol: 1e-9 }
    }
}

impl Spectrum {
    pub fn gaussian(omega0: f64, sigma: f64) -> Result<Self> {
        let s = Self { omega0, sigma, ..Self::default() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite() && self.omega0.is_finite()) {
            return Err(Error::Domain(format!(
                "spectrum needs finite ω0 and σ > 0, got ω0 = {}, σ = {}",
                self.omega0, self.sigma
            )));
        }
        if !(self.cutoff > 0.0) || !(self.tol > 0.0) {
            return Err(Error::Domain("spectrum cutoff and tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn support(&self) -> (f64, f64) {
        let w = self.cutoff * self.sigma;
        (self.omega0 - w, self.omega0 + w)
    }

    pub fn weight(&self, omega: f64) -> f64 {
        let (a, b) = self.support();
        if omega < a || omega > b {
            return 0.0;
        }
        let u = (omega - self.omega0) / self.sigma;
        (-0.5 * u * u).exp()
    }

    /// `∫ D(ω) f(ω) dω` over the support.
    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Result<Complex64> {
        let (a, b) = self.support();
        let q = integrate_adaptive(a, b, self.tol, MAX_PANELS, |w| f(w) * self.weight(w))?;
        Ok(q.value)
    }
}

/// Pulse parameters; `η ∈ (0, π/2)`, gate half-width `T > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XPulseParams {
    pub eta: f64,
    pub gate: f64,
    pub spectrum: Spectrum,
}

impl XPulseParams {
    pub fn new(eta: f64, gate: f64, spectrum: Spectrum) -> Result<Self> {
        if !(eta > 0.0 && eta < std::f64::consts::FRAC_PI_2) {
            return Err(Error::Domain(format!("axicon angle η = {eta} outside (0, π/2)")));
        }
        if !(gate > 0.0) || !gate.is_finite() {
            return Err(Error::Domain(format!("gate half-width T = {gate} must be positive")));
        }
        spectrum.validate()?;
        Ok(Self { eta, gate, spectrum })
    }

    /// `1/cos η`.
    pub fn front_speed(&self) -> f64 {
        1.0 / self.eta.cos()
    }

    pub fn tau(&self, t: f64, z: f64) -> f64 {
        t - z * self.eta.cos()
    }

    /// `T(τ)`: 1 strictly inside the gate, 0 elsewhere.
    pub fn inside(&self, tau: f64) -> bool {
        tau.abs() < self.gate
    }

    /// `∫ D(ω) J0(ωρ sin η) g(ω) e^{-iωτ} dω`.
    fn kernel(&self, tau: f64, rho: f64, g: impl Fn(f64) -> Complex64) -> Result<Complex64> {
        let s = self.eta.sin();
        self.spectrum
            .integrate(|w| g(w) * bessel_j(0, w * rho * s) * Complex64::from_polar(1.0, -w * tau))
    }

    /// The ungated integral, also valid outside the sheet.
    pub fn ungated(&self, tau: f64, rho: f64) -> Result<Complex64> {
        self.kernel(tau, rho, |_| Complex64::new(1.0, 0.0))
    }
}

/// `Ψ(t, ρ, 0)`.
pub fn boundary_profile(p: &XPulseParams, t: f64, rho: f64) -> Result<Complex64> {
    if !p.inside(t) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    p.ungated(t, rho)
}

/// `∂zΨ(t, ρ, 0) = i T(t) cos η ∫ D(ω) J0(ωρ sin η) k(ω) e^{-iωt} dω` with
/// `k(ω) = ω`.
pub fn boundary_normal_derivative(p: &XPulseParams, t: f64, rho: f64) -> Result<Complex64> {
    if !p.inside(t) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let v = p.kernel(t, rho, |w| Complex64::new(w, 0.0))?;
    Ok(Complex64::new(0.0, p.eta.cos()) * v)
}

/// `Ψ(t, ρ, z)`; exactly zero outside the sheet `|t - z cos η| < T`.
pub fn eval_xpulse(p: &XPulseParams, t: f64, rho: f64, z: f64) -> Result<Complex64> {
    let tau = p.tau(t, z);
    if !p.inside(tau) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    p.ungated(tau, rho)
}

/// The pulse as a scalar field of `(t, x, y, z)` with analytic gradient inside
/// the sheet. Quadrature failures surface as NaN through this interface; use
/// [`eval_xpulse`] for a checked value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XPulse(pub XPulseParams);

impl ScalarField for XPulse {
    fn value(&self, q: Point4) -> Complex64 {
        eval_xpulse(&self.0, q[0], q[1].hypot(q[2]), q[3]).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    fn gradient(&self, q: Point4) -> [Complex64; 4] {
        let p = &self.0;
        let zero = Complex64::new(0.0, 0.0);
        let tau = p.tau(q[0], q[3]);
        if !p.inside(tau) {
            return [zero; 4];
        }
        let rho = q[1].hypot(q[2]);
        let s = p.eta.sin();
        let i = Complex64::new(0.0, 1.0);
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let dt = p.kernel(tau, rho, |w| -i * w).unwrap_or(nan);
        // ∂ρ J0(ωρ s) = -ωs J1(ωρ s)
        let drho = if rho > 0.0 {
            p.spectrum
                .integrate(|w| -w * s * bessel_j(1, w * rho * s) * Complex64::from_polar(1.0, -w * tau))
                .unwrap_or(nan)
        } else {
            zero
        };
        let (cx, cy) = if rho > 0.0 { (q[1] / rho, q[2] / rho) } else { (0.0, 0.0) };
        [dt, drho * cx, drho * cy, -dt * p.eta.cos()]
    }
}

/// Least-squares front trajectory.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrontFit {
    /// Absolute amplitude threshold.
    pub threshold: f64,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub speed: f64,
    pub intercept: f64,
    /// RMS deviation of the positions from the fitted line.
    pub residual: f64,
    /// Standard error of the fitted speed.
    pub speed_stderr: f64,
}

/// Largest on-axis `|Ψ|` over the sheet, sampled in `τ`.
pub fn on_axis_peak(p: &XPulseParams) -> Result<f64> {
    let n = 200;
    let mut peak: f64 = 0.0;
    for k in 0..=n {
        let tau = -p.gate + 2.0 * p.gate * k as f64 / n as f64;
        let tau = tau.clamp(-p.gate * (1.0 - 1e-12), p.gate * (1.0 - 1e-12));
        peak = peak.max(p.ungated(tau, 0.0)?.norm());
    }
    Ok(peak)
}

/// For each time, the largest `z` in `window` with `|Ψ(t, 0, z)| > ε`, where
/// `ε = eps_rel ·` on-axis peak; then a linear fit `z = v t + c`.
pub fn track_front(
    p: &XPulseParams,
    times: &[f64],
    window: (f64, f64),
    eps_rel: f64,
    exec: Exec,
) -> Result<FrontFit> {
    if times.len() < 8 {
        return Err(Error::Front(format!("need at least 8 time samples, got {}", times.len())));
    }
    let (z0, z1) = window;
    if !(z1 > z0) {
        return Err(Error::Front(format!("empty z-window [{z0}, {z1}]")));
    }
    let threshold = eps_rel * on_axis_peak(p)?;
    let above = |t: f64, z: f64| -> Result<bool> { Ok(eval_xpulse(p, t, 0.0, z)?.norm() > threshold) };
    let scan = 400;
    let dz = (z1 - z0) / scan as f64;
    let found: Vec<Result<f64>> = exec.map_slice(times, |&t| {
        let mut hi = z1;
        if above(t, hi)? {
            return Err(Error::Front(format!("signal above threshold at the window edge z = {z1}, t = {t}")));
        }
        for k in 1..=scan {
            let z = z1 - k as f64 * dz;
            if above(t, z)? {
                let mut lo = z;
                while hi - lo > 1e-12 * (1.0 + hi.abs()) {
                    let mid = 0.5 * (lo + hi);
                    if above(t, mid)? {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
            hi = z;
        }
        Err(Error::Front(format!("no crossing of ε = {threshold:e} in z ∈ [{z0}, {z1}] at t = {t}")))
    });
    let positions = found.into_iter().collect::<Result<Vec<f64>>>()?;
    let (speed, intercept, residual, speed_stderr) = linear_fit(times, &positions);
    Ok(FrontFit { threshold, times: times.to_vec(), positions, speed, intercept, residual, speed_stderr })
}

fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let residual = (ss / n).sqrt();
    let stderr = if x.len() > 2 { (ss / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    (slope, intercept, residual, stderr)
}
