//! Bessel functions of the first kind.

use std::f64::consts::PI;

/// Below this argument `J_n` is summed from its power series.
const SERIES_MAX: f64 = 12.0;
/// Above this argument `J_0`, `J_1` use the Hankel expansion.
const HANKEL_MIN: f64 = 25.0;

/// `J_n(x)` for integer `n ≥ 0` and finite `x`.
///
/// Power series for `|x| < 12`; Miller's downward recurrence for
/// `12 ≤ |x| < 25`; beyond that the Hankel expansion of `J_0`, `J_1` followed
/// by upward recurrence while `n < |x|`, and Miller's algorithm otherwise.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let v = if ax < SERIES_MAX {
        bessel_j_series(n, ax)
    } else if ax >= HANKEL_MIN && (n as f64) < ax {
        upward(n, ax)
    } else {
        miller(n, ax)
    };
    sign * v
}

/// Direct power series `Σ (-1)^k (x/2)^{2k+n} / (k! (n+k)!)`.
pub fn bessel_j_series(n: usize, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..500 {
        term *= q / (k as f64 * (n + k) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > 2 {
            break;
        }
    }
    sum
}

fn hankel(nu: usize, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        let sgn = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sgn * a;
        } else {
            q += sgn * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (nu as f64 / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn upward(n: usize, x: f64) -> f64 {
    let j0 = hankel(0, x);
    if n == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = hankel(1, x);
    for k in 1..n {
        let next = 2.0 * k as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn miller(n: usize, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let mut m = (top + 30.0 + (40.0 * top).sqrt()) as usize;
    m += m % 2;
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    let mut result = 0.0;
    for k in (1..=m).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur = J_{k-1} (unnormalised)
        if k - 1 == n {
            result = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    norm += cur;
    result / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(1/π)∫₀^π cos(nτ - x sin τ) dτ` by the trapezoid rule, which is
    /// spectrally accurate for this periodic integrand.
    fn integral_oracle(n: usize, x: f64) -> f64 {
        let m = 2000;
        let h = PI / m as f64;
        let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
        let mut s = 0.5 * (f(0.0) + f(PI));
        for i in 1..m {
            s += f(i as f64 * h);
        }
        s * h / PI
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(1, 0.0), 0.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[0.3, 1.0, 5.5, 11.9, 12.1, 18.0, 24.9, 25.1, 40.0, 120.0, 300.0] {
            for n in 0..=15 {
                let a = bessel_j(n, x);
                let b = integral_oracle(n, x);
                assert!((a - b).abs() < 1e-11, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn method_switches_overlap() {
        for n in 0..=12 {
            for &x in &[10.0, 11.5, 12.0, 13.0, 14.0] {
                let s = bessel_j_series(n, x);
                let m = miller(n, x);
                assert!((s - m).abs() < 1e-9, "n={n} x={x}");
            }
            if n < 25 {
                assert!((upward(n, 26.0) - miller(n, 26.0)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parity_in_argument() {
        assert!((bessel_j(1, -2.0) + bessel_j(1, 2.0)).abs() < 1e-16);
        assert_eq!(bessel_j(2, -2.0), bessel_j(2, 2.0));
    }
}
