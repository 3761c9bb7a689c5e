//! Gauss-Legendre rules and adaptive composite integration.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// `∫_a^b f` with this rule.
    pub fn integrate<T, F>(&self, a: f64, b: f64, f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: Fn(f64) -> T,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s = s + f(mid + half * x) * (w * half);
        }
        s
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, w * half))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    /// Difference between the last two panel counts.
    pub error: f64,
    pub panels: usize,
}

/// Composite Gauss-Legendre integration of a complex integrand on `[a, b]`,
/// doubling the panel count until two successive estimates agree to
/// `tol · max(1, |I|)`.
pub fn integrate_adaptive<F>(a: f64, b: f64, tol: f64, max_panels: usize, f: F) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64,
{
    let rule = GaussLegendre::new(16);
    let composite = |panels: usize| -> Complex64 {
        let w = (b - a) / panels as f64;
        (0..panels)
            .map(|i| {
                let lo = a + i as f64 * w;
                rule.mapped(lo, lo + w).map(|(x, wt)| f(x) * wt).sum::<Complex64>()
            })
            .sum()
    };
    let mut panels = 1;
    let mut prev = composite(panels);
    loop {
        panels *= 2;
        let cur = composite(panels);
        let err = (cur - prev).norm();
        if err <= tol * cur.norm().max(1.0) {
            return Ok(Quadrature { value: cur, error: err, panels });
        }
        if panels >= max_panels {
            return Err(Error::Quadrature { achieved: err, requested: tol });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_integrate_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33] {
            let g = GaussLegendre::new(n);
            assert!((g.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg + 1) as f64 };
                let got: f64 = g.integrate(-1.0, 1.0, |x: f64| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn adaptive_oscillatory_integral() {
        let q = integrate_adaptive(0.0, 20.0, 1e-12, 1 << 12, |x| Complex64::from_polar(1.0, 3.0 * x)).unwrap();
        let exact = (Complex64::from_polar(1.0, 60.0) - 1.0) / Complex64::new(0.0, 3.0);
        assert!((q.value - exact).norm() < 1e-11);
    }

    #[test]
    fn adaptive_reports_failure() {
        let r = integrate_adaptive(0.0, 1.0, 1e-15, 4, |x| Complex64::new((1000.0 * x).sin(), 0.0));
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
