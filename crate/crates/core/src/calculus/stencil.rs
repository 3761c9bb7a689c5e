use num_complex::Complex64;

use crate::clifford::CMv;
use crate::error::Result;
use crate::exec::Exec;
use crate::field::{MultivectorField, Point4, ScalarField};

use super::grid::SampledField;

/// Central-difference scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    #[default]
    Order2,
    Order4,
}

impl Scheme {
    pub fn order(self) -> u32 {
        match self {
            Scheme::Order2 => 2,
            Scheme::Order4 => 4,
        }
    }

    pub fn half_width(self) -> usize {
        match self {
            Scheme::Order2 => 1,
            Scheme::Order4 => 2,
        }
    }

    /// First-derivative weights for offsets `1..=half_width` (antisymmetric).
    fn first(self) -> &'static [f64] {
        match self {
            Scheme::Order2 => &[0.5],
            Scheme::Order4 => &[2.0 / 3.0, -1.0 / 12.0],
        }
    }

    /// Second-derivative weights: centre, then offsets `1..=half_width`.
    fn second(self) -> (f64, &'static [f64]) {
        match self {
            Scheme::Order2 => (-2.0, &[1.0]),
            Scheme::Order4 => (-2.5, &[4.0 / 3.0, -1.0 / 12.0]),
        }
    }
}

fn shifted(p: Point4, mu: usize, d: f64) -> Point4 {
    let mut q = p;
    q[mu] += d;
    q
}

/// `Σ γμ D_μ F` at `p`, with `D_μ` the central difference of step `h[μ]`.
pub fn dirac_at<F: MultivectorField + ?Sized>(f: &F, p: Point4, h: [f64; 4], scheme: Scheme) -> CMv {
    let mut out = CMv::zero();
    for mu in 0..4 {
        let mut d = CMv::zero();
        for (k, w) in scheme.first().iter().enumerate() {
            let s = (k + 1) as f64 * h[mu];
            d += (f.at(shifted(p, mu, s)) - f.at(shifted(p, mu, -s))) * (w / h[mu]);
        }
        out += CMv::gamma(mu) * d;
    }
    out
}

/// `D_μ Φ` at `p`.
pub fn partial_at<F: ScalarField + ?Sized>(f: &F, p: Point4, mu: usize, h: f64, scheme: Scheme) -> Complex64 {
    let mut d = Complex64::new(0.0, 0.0);
    for (k, w) in scheme.first().iter().enumerate() {
        let s = (k + 1) as f64 * h;
        d += (f.value(shifted(p, mu, s)) - f.value(shifted(p, mu, -s))) * (w / h);
    }
    d
}

/// Compact-stencil `□Φ = ∂t²Φ - ∇²Φ` at `p`.
pub fn dalembertian_at<F: ScalarField + ?Sized>(f: &F, p: Point4, h: [f64; 4], scheme: Scheme) -> Complex64 {
    let centre = f.value(p);
    let (c0, ws) = scheme.second();
    let mut out = Complex64::new(0.0, 0.0);
    for mu in 0..4 {
        let mut d = centre * c0;
        for (k, w) in ws.iter().enumerate() {
            let s = (k + 1) as f64 * h[mu];
            d += (f.value(shifted(p, mu, s)) + f.value(shifted(p, mu, -s))) * *w;
        }
        let sign = if mu == 0 { 1.0 } else { -1.0 };
        out += d * (sign / (h[mu] * h[mu]));
    }
    out
}

/// Finite-difference Dirac operator on a sampled field; the result lives on
/// the interior points reachable by the stencil.
pub fn dirac_fd(f: &SampledField, scheme: Scheme, exec: Exec) -> Result<SampledField> {
    let w = scheme.half_width();
    let grid = f.grid();
    let inner = grid.shrink(w)?;
    let weights = scheme.first();
    let values = exec.map_indices(inner.len(), |i| {
        let idx = inner.unravel(i).map(|k| k + w);
        let mut out = CMv::zero();
        for mu in 0..4 {
            let mut d = CMv::zero();
            for (k, wt) in weights.iter().enumerate() {
                let mut plus = idx;
                let mut minus = idx;
                plus[mu] += k + 1;
                minus[mu] -= k + 1;
                d += (*f.get(plus) - *f.get(minus)) * (wt / grid.spacing[mu]);
            }
            out += CMv::gamma(mu) * d;
        }
        out
    });
    SampledField::new(inner, values)
}

/// Leakage of `∂f` outside grades `r ± 1` for a field of homogeneous grade
/// `r`, relative to the largest coefficient of `∂f`.
pub fn grade_split_check(f: &SampledField, scheme: Scheme, exec: Exec) -> Result<f64> {
    let r = homogeneous_grade(f)?;
    let d = dirac_fd(f, scheme, exec)?;
    let mut leak: f64 = 0.0;
    for v in d.values() {
        let mut allowed = v.grade_unchecked(r + 1);
        if r > 0 {
            allowed += v.grade_unchecked(r - 1);
        }
        leak = leak.max((*v - allowed).max_abs());
    }
    Ok(leak / d.max_abs().max(f64::MIN_POSITIVE))
}

fn homogeneous_grade(f: &SampledField) -> Result<usize> {
    let scale = f.max_abs();
    for r in 0..=4 {
        if f.values().iter().all(|v| v.is_grade(r, 1e-14 * scale)) {
            return Ok(r);
        }
    }
    Err(crate::error::Error::WrongGrade {
        grade: 0,
        what: "grade split check needs a field of a single grade".into(),
    })
}
