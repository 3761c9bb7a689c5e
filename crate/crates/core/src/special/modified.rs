//! Modified Bessel functions `I_n` (series) and `K_n`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// `K_0`, `K_1` switch from the logarithmic series to Steed's continued
/// fraction above this argument.
const SERIES_MAX: f64 = 2.0;

/// `I_n(x) = Σ (x/2)^{2k+n} / (k! (n+k)!)`.
pub fn bessel_i_series(n: usize, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let q = half * half;
    let mut sum = term;
    for k in 1..500 {
        term *= q / (k as f64 * (n + k) as f64);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

fn k01_series(x: f64) -> (f64, f64) {
    let q = x * x / 4.0;
    let lead = -((x / 2.0).ln() + EULER_GAMMA);
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        harmonic += 1.0 / k as f64;
        sum += term * harmonic;
        if term * harmonic < 1e-17 * sum.abs() {
            break;
        }
    }
    let i0 = bessel_i_series(0, x);
    let i1 = bessel_i_series(1, x);
    let k0 = lead * i0 + sum;
    // Wronskian I0 K1 + I1 K0 = 1/x
    let k1 = (1.0 / x - i1 * k0) / i0;
    (k0, k1)
}

/// Steed's method for the second continued fraction (order 0).
fn k01_steed(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-16 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `K_n(x)` for integer `n ≥ 0` and `x > 0`; upward recurrence from `K_0`,
/// `K_1`, which is stable for this function.
pub fn bessel_k(n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_n needs a positive finite argument, got {x}")));
    }
    let (k0, k1) = if x <= SERIES_MAX { k01_series(x) } else { k01_steed(x) };
    if n == 0 {
        return Ok(k0);
    }
    let mut prev = k0;
    let mut cur = k1;
    for k in 1..n {
        let next = prev + 2.0 * k as f64 / x * cur;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
