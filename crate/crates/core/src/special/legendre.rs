//! Legendre polynomials and associated Legendre functions.

use crate::error::{Error, Result};

/// `P_ℓ^m(x) = (1 - x²)^{m/2} d^m P_ℓ/dx^m` (no Condon-Shortley phase).
pub fn legendre_p(l: usize, m: usize, x: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Domain(format!("order m = {m} exceeds degree ℓ = {l}")));
    }
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    let mut pmm = 1.0;
    let root = ((1.0 - x) * (1.0 + x)).sqrt();
    for k in 0..m {
        pmm *= (2 * k + 1) as f64 * root;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut prev = pmm;
    let mut cur = x * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let next = (x * (2 * ll - 1) as f64 * cur - (ll + m - 1) as f64 * prev) / (ll - m) as f64;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Monomial coefficients of `P_ℓ`, lowest power first.
pub fn legendre_poly_coeffs(l: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if l == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for n in 1..l {
        // (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
        let mut next = vec![0.0; n + 2];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += (2 * n + 1) as f64 * c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= n as f64 * c;
        }
        for c in next.iter_mut() {
            *c /= (n + 1) as f64;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `m`-th derivative of a polynomial given by monomial coefficients.
pub fn poly_derivative(coeffs: &[f64], m: usize) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    for _ in 0..m {
        if c.len() <= 1 {
            return vec![0.0];
        }
        c = c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect();
    }
    c
}
