use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::clifford::CMv;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{MultivectorField, Point4, ScalarField};
use crate::spinor::gamma21;

use super::grid::Grid4;
use super::stencil::{dalembertian_at, dirac_at, Scheme};

/// Residual norms on one refinement level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelNorm {
    pub h: f64,
    pub rms: f64,
    pub max: f64,
}

/// Observed convergence order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Order {
    /// Residuals at rounding level on every grid.
    Exact,
    Estimated(f64),
}

impl Order {
    pub fn value(self) -> Option<f64> {
        match self {
            Order::Exact => None,
            Order::Estimated(p) => Some(p),
        }
    }

    /// True when exact or at least `min`.
    pub fn at_least(self, min: f64) -> bool {
        self.value().is_none_or(|p| p >= min)
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Exact => s.serialize_str("exact"),
            Order::Estimated(p) => s.serialize_f64(*p),
        }
    }
}

/// Norms below this are treated as rounding noise.
pub const EXACT_THRESHOLD: f64 = 1e-14;

/// Difference quotients lose about `ε·|F|/h`; residuals under this many
/// times that bound count as rounding noise.
pub const ROUNDOFF_FACTOR: f64 = 1e3;

/// Least-squares slope of `log(norm)` against `log(h)`.
pub fn convergence_order(norms: &[(f64, f64)]) -> Result<Order> {
    if norms.len() < 3 {
        return Err(Error::TooFewLevels(norms.len()));
    }
    if norms.iter().all(|&(_, r)| r <= EXACT_THRESHOLD) || norms.iter().any(|&(_, r)| r <= 0.0) {
        return Ok(Order::Exact);
    }
    let n = norms.len() as f64;
    let xs: Vec<f64> = norms.iter().map(|(h, _)| h.ln()).collect();
    let ys: Vec<f64> = norms.iter().map(|(_, r)| r.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(Order::Estimated(sxy / sxx))
}

/// Per-level norms, estimated order, and a Richardson-extrapolated residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub norms: Vec<LevelNorm>,
    pub order: Order,
    pub scheme: Scheme,
    /// `(2^p r_fine - r_coarse)/(2^p - 1)` on the RMS norms with the nominal
    /// scheme order `p`.
    pub extrapolated: f64,
    /// RMS of `|F|` over the finest grid.
    pub field_scale: f64,
}

impl ResidualReport {
    pub fn relative_extrapolated(&self) -> f64 {
        if self.field_scale > 0.0 {
            self.extrapolated / self.field_scale
        } else {
            self.extrapolated
        }
    }

    pub fn finest(&self) -> &LevelNorm {
        self.norms.last().expect("report has at least one level")
    }
}

/// Points skipped by a sweep, given the point and the grid spacing.
pub type Exclusion = Arc<dyn Fn(Point4, [f64; 4]) -> bool + Send + Sync>;

/// Which nodes a refinement level is measured on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    /// Interior nodes of the coarsest level, shared by every level, so the
    /// norms differ only through the stencil spacing.
    #[default]
    Common,
    /// Every interior node of each level.
    Full,
}

/// A fixed physical window refined by halving the spacing.
#[derive(Clone)]
pub struct Refinement {
    pub lo: Point4,
    pub hi: Point4,
    /// Cells per axis on the coarsest level.
    pub intervals: [usize; 4],
    pub levels: usize,
    pub scheme: Scheme,
    pub exec: Exec,
    pub sampling: Sampling,
    pub exclude: Option<Exclusion>,
}

impl std::fmt::Debug for Refinement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Refinement")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("intervals", &self.intervals)
            .field("levels", &self.levels)
            .field("scheme", &self.scheme)
            .field("exec", &self.exec)
            .field("sampling", &self.sampling)
            .field("exclude", &self.exclude.is_some())
            .finish()
    }
}

impl Refinement {
    /// Three levels of the order-2 scheme on the default executor.
    pub fn new(lo: Point4, hi: Point4, intervals: [usize; 4]) -> Self {
        Self {
            lo,
            hi,
            intervals,
            levels: 3,
            scheme: Scheme::Order2,
            exec: Exec::default(),
            sampling: Sampling::default(),
            exclude: None,
        }
    }

    /// Cube of half-width `half` around `centre` in every coordinate.
    pub fn around(centre: Point4, half: f64, intervals: usize) -> Self {
        Self::new(centre.map(|c| c - half), centre.map(|c| c + half), [intervals; 4])
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn with_exclusion(mut self, exclude: Exclusion) -> Self {
        self.exclude = Some(exclude);
        self
    }

    pub fn grids(&self) -> Result<Vec<Grid4>> {
        if self.levels < 3 {
            return Err(Error::TooFewLevels(self.levels));
        }
        let mut g = Grid4::window(self.lo, self.hi, self.intervals)?;
        let mut out = Vec::with_capacity(self.levels);
        for _ in 0..self.levels {
            out.push(g);
            g = g.refined();
        }
        Ok(out)
    }

    /// Runs `op` on every level at the nodes chosen by [`Sampling`]; `op`
    /// receives the point and the level spacing and returns the residual
    /// magnitude and the field magnitude there.
    pub fn report<Op>(&self, op: Op) -> Result<ResidualReport>
    where
        Op: Fn(Point4, [f64; 4]) -> (f64, f64) + Sync + Send,
    {
        let mut norms = Vec::with_capacity(self.levels);
        let mut scale = 0.0;
        let grids = self.grids()?;
        let common = grids[0].shrink(self.scheme.half_width())?;
        for grid in grids {
            let inner = match self.sampling {
                Sampling::Common => common,
                Sampling::Full => grid.shrink(self.scheme.half_width())?,
            };
            let s = sweep(&inner, grid.spacing, self.exec, self.exclude.as_deref(), &op);
            if s.count == 0 {
                return Err(Error::GridTooSmall("every interior point is excluded".into()));
            }
            norms.push(LevelNorm {
                h: grid.h(),
                rms: (s.sum_sq / s.count as f64).sqrt(),
                max: s.max,
            });
            scale = (s.field_sq / s.count as f64).sqrt();
        }
        let noise = |n: &LevelNorm| n.rms <= ROUNDOFF_FACTOR * f64::EPSILON * scale.max(1.0) / n.h;
        let order = if norms.len() >= 3 && norms.iter().all(noise) {
            Order::Exact
        } else {
            convergence_order(&norms.iter().map(|n| (n.h, n.rms)).collect::<Vec<_>>())?
        };
        let p = 2f64.powi(self.scheme.order() as i32);
        let fine = norms[norms.len() - 1].rms;
        let coarse = norms[norms.len() - 2].rms;
        Ok(ResidualReport {
            norms,
            order,
            scheme: self.scheme,
            extrapolated: ((p * fine - coarse) / (p - 1.0)).abs(),
            field_scale: scale,
        })
    }
}

#[derive(Default)]
struct Sums {
    sum_sq: f64,
    max: f64,
    field_sq: f64,
    count: usize,
}

/// Deterministic sweep: parallel over `(t, x)` slabs, sequential inside a
/// slab and in the final reduction.
fn sweep<Op>(grid: &Grid4, spacing: [f64; 4], exec: Exec, exclude: Option<&(dyn Fn(Point4, [f64; 4]) -> bool + Send + Sync)>, op: &Op) -> Sums
where
    Op: Fn(Point4, [f64; 4]) -> (f64, f64) + Sync + Send,
{
    let [nt, nx, ny, nz] = grid.extents;
    let partial = exec.map_indices(nt * nx, |slab| {
        let (it, ix) = (slab / nx, slab % nx);
        let mut s = Sums::default();
        for iy in 0..ny {
            for iz in 0..nz {
                let p = grid.point([it, ix, iy, iz]);
                if exclude.is_some_and(|e| e(p, spacing)) {
                    continue;
                }
                let (r, f) = op(p, spacing);
                s.sum_sq += r * r;
                s.max = s.max.max(r);
                s.field_sq += f * f;
                s.count += 1;
            }
        }
        s
    });
    partial.into_iter().fold(Sums::default(), |mut acc, s| {
        acc.sum_sq += s.sum_sq;
        acc.max = acc.max.max(s.max);
        acc.field_sq += s.field_sq;
        acc.count += s.count;
        acc
    })
}

/// `‖∂F‖` under refinement.
pub fn weyl_residual<F: MultivectorField + ?Sized>(f: &F, refinement: &Refinement) -> Result<ResidualReport> {
    let scheme = refinement.scheme;
    refinement.report(|p, h| (dirac_at(f, p, h, scheme).norm(), f.at(p).norm()))
}

/// `‖∂ψ γ2γ1 - m ψ γ0‖` under refinement.
pub fn dirac_hestenes_residual<F: MultivectorField + ?Sized>(
    psi: &F,
    mass: f64,
    refinement: &Refinement,
) -> Result<ResidualReport> {
    let scheme = refinement.scheme;
    let g21 = gamma21();
    let g0 = CMv::gamma(0);
    refinement.report(|p, h| {
        let v = psi.at(p);
        let r = dirac_at(psi, p, h, scheme) * g21 - v * g0 * mass;
        (r.norm(), v.norm())
    })
}

/// `‖□Φ‖` under refinement.
pub fn dalembertian_residual<F: ScalarField + ?Sized>(phi: &F, refinement: &Refinement) -> Result<ResidualReport> {
    let scheme = refinement.scheme;
    refinement.report(|p, h| (dalembertian_at(phi, p, h, scheme).norm(), phi.value(p).norm()))
}
