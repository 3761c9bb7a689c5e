//! Duality rotations, the chirally coupled Weyl equations
//! `∂F₊ + gγ5BF₊ = 0`, `∂F₋ - gγ5BF₋ = 0`, their gauge transformations,
//! and the parity-split form `∂F γ2γ1 + gBF = 0`.
//!
//! For an even `F` of definite handedness, `F e^{gγ5θ}` satisfies
//! `∂(F e^{gγ5θ}) = (∂F - gγ5 ∂θ F) e^{gγ5θ}`, so the plus channel is gauge
//! covariant with `B ↦ B + ∂θ` and the minus channel with `B ↦ B - ∂θ`.

use std::sync::Arc;

use crate::calculus::{dirac_at, Refinement, ResidualReport};
use crate::clifford::{CMv, Mv};
use crate::error::{Error, Result};
use crate::field::{MultivectorField, Point4};
use crate::spinor::{gamma21, project, Handedness};

/// Real scalar gauge function with its gradient.
pub trait GaugeFunction: Send + Sync {
    fn value(&self, p: Point4) -> f64;
    fn gradient(&self, p: Point4) -> [f64; 4];

    /// `∂θ = Σ ∂μθ γμ`.
    fn gradient_vector(&self, p: Point4) -> Mv {
        Mv::vector(self.gradient(p))
    }
}

/// `θ = c + Σ kμ xμ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Linear {
    pub c: f64,
    pub k: [f64; 4],
}

impl GaugeFunction for Linear {
    fn value(&self, p: Point4) -> f64 {
        self.c + (0..4).map(|i| self.k[i] * p[i]).sum::<f64>()
    }
    fn gradient(&self, _p: Point4) -> [f64; 4] {
        self.k
    }
}

/// `θ = a sin(k·x)`, with `k·x = Σ kμ xμ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wave {
    pub a: f64,
    pub k: [f64; 4],
}

impl GaugeFunction for Wave {
    fn value(&self, p: Point4) -> f64 {
        self.a * (0..4).map(|i| self.k[i] * p[i]).sum::<f64>().sin()
    }
    fn gradient(&self, p: Point4) -> [f64; 4] {
        let c = self.a * (0..4).map(|i| self.k[i] * p[i]).sum::<f64>().cos();
        self.k.map(|k| c * k)
    }
}

/// Sum of two gauge functions.
pub struct Sum(pub Arc<dyn GaugeFunction>, pub Arc<dyn GaugeFunction>);

impl GaugeFunction for Sum {
    fn value(&self, p: Point4) -> f64 {
        self.0.value(p) + self.1.value(p)
    }
    fn gradient(&self, p: Point4) -> [f64; 4] {
        let (a, b) = (self.0.gradient(p), self.1.gradient(p));
        std::array::from_fn(|i| a[i] + b[i])
    }
}

/// 1-form potential `B`.
pub trait OneForm: Send + Sync {
    fn at(&self, p: Point4) -> Mv;
}

impl<F: Fn(Point4) -> Mv + Send + Sync> OneForm for F {
    fn at(&self, p: Point4) -> Mv {
        self(p)
    }
}

/// `B ± ∂θ`.
#[derive(Clone)]
pub struct Shifted {
    pub base: Arc<dyn OneForm>,
    pub theta: Arc<dyn GaugeFunction>,
    pub sign: f64,
}

impl OneForm for Shifted {
    fn at(&self, p: Point4) -> Mv {
        self.base.at(p) + self.theta.gradient_vector(p) * self.sign
    }
}

struct Zero;

impl OneForm for Zero {
    fn at(&self, _p: Point4) -> Mv {
        Mv::zero()
    }
}

impl GaugeFunction for Zero {
    fn value(&self, _p: Point4) -> f64 {
        0.0
    }
    fn gradient(&self, _p: Point4) -> [f64; 4] {
        [0.0; 4]
    }
}

/// Coupling, potential and gauge angles.
#[derive(Clone)]
pub struct GaugeConfig {
    pub g: f64,
    pub b: Arc<dyn OneForm>,
    /// Gauge function `θ`.
    pub theta: Arc<dyn GaugeFunction>,
    /// Constant duality angle `ϑ`.
    pub vartheta: f64,
    /// Spacetime duality angle `β`.
    pub beta: Arc<dyn GaugeFunction>,
}

impl Default for GaugeConfig {
    fn default() -> Self {
        Self {
            g: 1.0,
            b: Arc::new(Zero),
            theta: Arc::new(Zero),
            vartheta: 0.0,
            beta: Arc::new(Zero),
        }
    }
}

impl std::fmt::Debug for GaugeConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GaugeConfig").field("g", &self.g).field("vartheta", &self.vartheta).finish_non_exhaustive()
    }
}

impl GaugeConfig {
    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }
    pub fn with_b(mut self, b: Arc<dyn OneForm>) -> Self {
        self.b = b;
        self
    }
    pub fn with_theta(mut self, theta: Arc<dyn GaugeFunction>) -> Self {
        self.theta = theta;
        self
    }

    /// Checks that `B` is a 1-form at `p`.
    pub fn check_potential(&self, p: Point4) -> Result<()> {
        let b = self.b.at(p);
        if b.is_grade(1, 1e-14 * b.norm().max(1.0)) {
            Ok(())
        } else {
            Err(Error::WrongGrade { grade: 1, what: "the potential B".into() })
        }
    }
}

/// Duality angle, constant or spacetime dependent.
#[derive(Clone)]
pub enum Angle {
    Constant(f64),
    Field(Arc<dyn GaugeFunction>),
}

impl Angle {
    fn at(&self, p: Point4) -> f64 {
        match self {
            Angle::Constant(a) => *a,
            Angle::Field(f) => f.value(p),
        }
    }
}

/// `exp(a γ5)` as a complexified multivector.
pub fn duality(a: f64) -> CMv {
    Mv::exp_pseudoscalar(a).to_complex()
}

/// `F ↦ exp(angle γ5) F`.
pub struct Dual<F> {
    field: F,
    angle: Angle,
}

pub fn duality_transform<F: MultivectorField>(field: F, angle: Angle) -> Dual<F> {
    Dual { field, angle }
}

impl<F: MultivectorField> MultivectorField for Dual<F> {
    fn at(&self, p: Point4) -> CMv {
        duality(self.angle.at(p)) * self.field.at(p)
    }
}

fn channel_sign(h: Handedness) -> f64 {
    match h {
        Handedness::Plus => 1.0,
        Handedness::Minus => -1.0,
    }
}

/// `∂F ± gγ5BF` at `p`, upper sign for the plus channel.
pub fn coupled_at<F: MultivectorField + ?Sized>(
    f: &F,
    b: &dyn OneForm,
    g: f64,
    h: Handedness,
    p: Point4,
    spacing: [f64; 4],
    scheme: crate::calculus::Scheme,
) -> CMv {
    let coupling = (Mv::pseudoscalar() * b.at(p)).to_complex() * f.at(p) * (channel_sign(h) * g);
    dirac_at(f, p, spacing, scheme) + coupling
}

/// Coupled residual of `F` in channel `h` under refinement.
pub fn coupled_residual<F: MultivectorField + ?Sized>(
    f: &F,
    cfg: &GaugeConfig,
    h: Handedness,
    refinement: &Refinement,
) -> Result<ResidualReport> {
    let scheme = refinement.scheme;
    refinement.report(|p, dx| {
        (coupled_at(f, cfg.b.as_ref(), cfg.g, h, p, dx, scheme).norm(), f.at(p).norm())
    })
}

/// `F ↦ F e^{gγ5θ}`.
pub struct Gauged<F> {
    field: F,
    g: f64,
    theta: Arc<dyn GaugeFunction>,
}

impl<F: MultivectorField> MultivectorField for Gauged<F> {
    fn at(&self, p: Point4) -> CMv {
        self.field.at(p) * duality(self.g * self.theta.value(p))
    }
}

/// Gauge transformation of channel `h`: `(F e^{gγ5θ}, B ± ∂θ)`.
pub fn gauge_transform<F: MultivectorField>(field: F, cfg: &GaugeConfig, h: Handedness) -> (Gauged<F>, GaugeConfig) {
    let b = Shifted { base: cfg.b.clone(), theta: cfg.theta.clone(), sign: channel_sign(h) };
    let gauged = Gauged { field, g: cfg.g, theta: cfg.theta.clone() };
    let mut next = cfg.clone();
    next.b = Arc::new(b);
    (gauged, next)
}

/// `∂F γ2γ1 + gBF` at `p`.
pub fn parity_coupled_at<F: MultivectorField + ?Sized>(
    f: &F,
    b: &dyn OneForm,
    g: f64,
    p: Point4,
    spacing: [f64; 4],
    scheme: crate::calculus::Scheme,
) -> CMv {
    dirac_at(f, p, spacing, scheme) * gamma21() + b.at(p).to_complex() * f.at(p) * g
}

/// Residuals of the parity-split equations.
#[derive(Clone, Debug, PartialEq)]
pub struct ParitySplit {
    /// `∂F γ2γ1 + gBF`.
    pub combined: ResidualReport,
    /// `∂F₊ + gγ5BF₊`.
    pub plus: ResidualReport,
    /// `∂F₋ - gγ5BF₋`.
    pub minus: ResidualReport,
    /// Largest `‖R - γ5(R₋ - R₊)‖` over all grids.
    pub identity: f64,
}

/// Splits `ψ = F₊ + F₋` by Weyl projection and evaluates both channels and
/// the combined equation on the same stencils.
pub fn parity_split_check<F: MultivectorField + ?Sized>(
    psi: &F,
    cfg: &GaugeConfig,
    refinement: &Refinement,
) -> Result<ParitySplit> {
    let plus = |p: Point4| project(&psi.at(p), Handedness::Plus);
    let minus = |p: Point4| project(&psi.at(p), Handedness::Minus);
    let scheme = refinement.scheme;
    let b = cfg.b.as_ref();
    let g5 = Mv::pseudoscalar().to_complex();
    let combined = refinement.report(|p, dx| (parity_coupled_at(psi, b, cfg.g, p, dx, scheme).norm(), psi.at(p).norm()))?;
    let rp = refinement.report(|p, dx| (coupled_at(&plus, b, cfg.g, Handedness::Plus, p, dx, scheme).norm(), plus(p).norm()))?;
    let rm = refinement.report(|p, dx| (coupled_at(&minus, b, cfg.g, Handedness::Minus, p, dx, scheme).norm(), minus(p).norm()))?;
    let id = refinement.report(|p, dx| {
        let r = parity_coupled_at(psi, b, cfg.g, p, dx, scheme);
        let r_plus = coupled_at(&plus, b, cfg.g, Handedness::Plus, p, dx, scheme);
        let r_minus = coupled_at(&minus, b, cfg.g, Handedness::Minus, p, dx, scheme);
        ((r - g5 * (r_minus - r_plus)).max_abs(), 1.0)
    });
    let identity = id?.norms.iter().map(|n| n.max).fold(0.0, f64::max);
    Ok(ParitySplit { combined, plus: rp, minus: rm, identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{weyl_residual, Scheme};
    use crate::potential::{weyl_from_potential, ConstraintPreset, GeneralizedPotential, WeylField};
    use crate::spinor::chirality_residual;
    use crate::waves::PlaneWave;
    use num_complex::Complex64;

    fn free(h: Handedness, omega: f64, dir: [f64; 3]) -> WeylField<PlaneWave> {
        let p = GeneralizedPotential::preset(PlaneWave::luminal(omega, dir), h, ConstraintPreset::FromB, 1.0, 0.5).unwrap();
        weyl_from_potential(p, h).unwrap()
    }

    fn refinement() -> Refinement {
        Refinement::around([0.1, 0.2, -0.1, 0.3], 0.3, 4)
    }

    fn theta() -> Arc<dyn GaugeFunction> {
        Arc::new(Wave { a: 0.4, k: [0.7, -0.3, 0.5, 0.2] })
    }

    #[test]
    fn duality_basics() {
        let w = free(Handedness::Plus, 2.0, [0.0, 0.0, 1.0]);
        let f = |p: Point4| w.at(p);
        let p = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(duality_transform(&f, Angle::Constant(0.0)).at(p), f.at(p));
        assert!((duality_transform(&f, Angle::Constant(std::f64::consts::PI)).at(p) + f.at(p)).max_abs() < 1e-15);
        let d = duality_transform(&f, Angle::Constant(0.8));
        assert!((d.at(p).norm() - f.at(p).norm()).abs() < 1e-14);
        let r0 = weyl_residual(&f, &refinement()).unwrap();
        let r1 = weyl_residual(&d, &refinement()).unwrap();
        for (a, b) in r0.norms.iter().zip(&r1.norms) {
            assert!((a.rms - b.rms).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_coupling_is_free_residual() {
        let f = free(Handedness::Plus, 2.0, [0.0, 1.0, 0.0]);
        let free_r = weyl_residual(&f, &refinement()).unwrap();
        let b: Arc<dyn OneForm> = Arc::new(|_p: Point4| Mv::vector([0.3, 0.1, 0.0, -0.2]));
        let cfg = GaugeConfig::default().with_g(0.0).with_b(b);
        assert_eq!(coupled_residual(&f, &cfg, Handedness::Plus, &refinement()).unwrap().norms, free_r.norms);
        let cfg = GaugeConfig::default();
        assert_eq!(coupled_residual(&f, &cfg, Handedness::Minus, &refinement()).unwrap().norms, free_r.norms);
    }

    #[test]
    fn manufactured_solutions_converge() {
        for h in [Handedness::Plus, Handedness::Minus] {
            let w = free(h, 2.0, [0.6, 0.0, 0.8]);
            let f0 = |p: Point4| w.at(p);
            let cfg = GaugeConfig::default().with_g(0.7).with_theta(theta());
            let (f, next) = gauge_transform(&f0, &cfg, h);
            let p = [0.2, 0.1, 0.0, -0.1];
            assert!(chirality_residual(&crate::spinor::WeylValue { value: f.at(p), handedness: h }) < 1e-13);
            let rep = coupled_residual(&f, &next, h, &refinement()).unwrap();
            assert!(rep.order.at_least(1.9), "{h:?} {:?}", rep.order);
            // The opposite coupling sign is not a solution.
            let wrong = coupled_residual(&f, &next, h.flip(), &refinement()).unwrap();
            assert!(wrong.finest().rms > 10.0 * rep.finest().rms, "{} {}", wrong.finest().rms, rep.finest().rms);
        }
    }

    #[test]
    fn gauge_orbit_invariance() {
        let w = free(Handedness::Plus, 2.0, [0.0, 0.0, 1.0]);
        let f0 = |p: Point4| w.at(p);
        let b: Arc<dyn OneForm> = Arc::new(|p: Point4| Mv::vector([0.2, p[3], -0.1, 0.3 * p[1]]));
        let cfg = GaugeConfig::default().with_b(b).with_theta(Arc::new(Linear { c: 0.1, k: [0.5, -0.2, 0.3, 0.1] }));
        let before = coupled_residual(&f0, &cfg, Handedness::Plus, &refinement()).unwrap();
        let (f1, cfg1) = gauge_transform(&f0, &cfg, Handedness::Plus);
        let after = coupled_residual(&f1, &cfg1, Handedness::Plus, &refinement()).unwrap();
        let diffs: Vec<(f64, f64)> =
            before.norms.iter().zip(&after.norms).map(|(a, b)| (a.h, (a.rms - b.rms).abs())).collect();
        assert!(diffs.iter().all(|d| d.1 < 0.05 * before.finest().rms.max(1e-3)));
        assert!(crate::calculus::convergence_order(&diffs).unwrap().at_least(1.8));
    }

    #[test]
    fn constant_gauge_and_group_law() {
        let w = free(Handedness::Minus, 1.5, [1.0, 0.0, 0.0]);
        let f0 = |p: Point4| w.at(p);
        let th1: Arc<dyn GaugeFunction> = Arc::new(Linear { c: 0.3, k: [0.2, 0.1, 0.0, 0.0] });
        let th2: Arc<dyn GaugeFunction> = Arc::new(Wave { a: 0.5, k: [0.0, 0.4, 0.3, 0.1] });
        let cfg = GaugeConfig::default().with_g(0.9);
        let (a, c1) = gauge_transform(&f0, &cfg.clone().with_theta(th1.clone()), Handedness::Minus);
        let (ab, c2) = gauge_transform(a, &c1.with_theta(th2.clone()), Handedness::Minus);
        let (one, c3) = gauge_transform(&f0, &cfg.with_theta(Arc::new(Sum(th1, th2))), Handedness::Minus);
        let p = [0.3, -0.2, 0.1, 0.5];
        assert!((ab.at(p) - one.at(p)).max_abs() < 1e-14);
        assert!((c2.b.at(p) - c3.b.at(p)).max_abs() < 1e-14);

        let cst = GaugeConfig::default().with_theta(Arc::new(Linear { c: 0.7, k: [0.0; 4] }));
        let (g, next) = gauge_transform(&f0, &cst, Handedness::Minus);
        assert_eq!(next.b.at(p), Mv::zero());
        assert!((g.at(p) - duality(0.7) * f0.at(p)).max_abs() < 1e-15);
    }

    #[test]
    fn parity_split_identity_and_pair() {
        // Manufactured pair sharing B = ∂θ: F₊ e^{gγ5θ} + F₋ e^{-gγ5θ}.
        let g = 0.6;
        let th = theta();
        let cfg = GaugeConfig::default().with_g(g).with_theta(th.clone());
        let wp = free(Handedness::Plus, 2.0, [0.0, 0.0, 1.0]);
        let wm = free(Handedness::Minus, 1.0, [0.0, 1.0, 0.0]);
        let fp = |p: Point4| wp.at(p);
        let fm = |p: Point4| wm.at(p);
        let (gp, next) = gauge_transform(&fp, &cfg, Handedness::Plus);
        let neg: Arc<dyn GaugeFunction> = Arc::new(Wave { a: -0.4, k: [0.7, -0.3, 0.5, 0.2] });
        let (gm, _) = gauge_transform(&fm, &cfg.clone().with_theta(neg), Handedness::Minus);
        let psi = |p: Point4| gp.at(p) + gm.at(p);
        let split = parity_split_check(&psi, &next, &refinement()).unwrap();
        assert!(split.identity < 1e-12, "{}", split.identity);
        assert!(split.plus.order.at_least(1.9) && split.minus.order.at_least(1.9));
        assert!(split.combined.order.at_least(1.9));

        // Random field and potential: the identity is algebraic.
        let wild = |p: Point4| {
            let mut m = CMv::zero();
            for i in 0..16u8 {
                let b = crate::clifford::Blade::from_mask(i).unwrap();
                let i = i as f64;
                m.set_coeff(b, Complex64::new((i * 0.7 + p[0] - p[2]).sin(), (p[1] * p[3] + i).cos()));
            }
            m
        };
        let b: Arc<dyn OneForm> = Arc::new(|p: Point4| Mv::vector([p[0].cos(), 0.2, p[1] * p[2], -0.4]));
        let split = parity_split_check(&wild, &GaugeConfig::default().with_b(b), &refinement().with_scheme(Scheme::Order4)).unwrap();
        assert!(split.identity < 1e-12, "{}", split.identity);
    }

    #[test]
    fn potential_grade_check() {
        let cfg = GaugeConfig::default();
        assert!(cfg.check_potential([0.0; 4]).is_ok());
        let bad = cfg.with_b(Arc::new(|_p: Point4| Mv::one()));
        assert!(bad.check_potential([0.0; 4]).is_err());
    }
}
