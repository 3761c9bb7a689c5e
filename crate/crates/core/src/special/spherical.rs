//! Spherical Bessel functions of the first kind.

/// `j_ℓ(x)`: power series for `|x| ≤ max(ℓ, 1)`, upward recurrence from
/// `j_0`, `j_1` beyond, where it is stable.
pub fn spherical_j(l: usize, x: f64) -> f64 {
    let ax = x.abs();
    let sign = if x < 0.0 && l % 2 == 1 { -1.0 } else { 1.0 };
    let v = if ax <= (l as f64).max(1.0) {
        ax.powi(l as i32) * reduced_series(l, ax * ax)
    } else {
        upward(l, ax)
    };
    sign * v
}

/// `g_ℓ(s) = j_ℓ(z) / z^ℓ` with `s = z²`, an entire function of `s`.
///
/// For `s < 0` it equals `i_ℓ(y) / y^ℓ` with `s = -y²`. The derivative is
/// `g_ℓ'(s) = -g_{ℓ+1}(s) / 2`.
pub fn spherical_reduced(l: usize, s: f64) -> f64 {
    let z = s.max(0.0).sqrt();
    if s <= 0.0 || z <= (l as f64).max(1.0) {
        reduced_series(l, s)
    } else {
        upward(l, z) / z.powi(l as i32)
    }
}

/// `Σ (-s/2)^k / (k! (2ℓ+2k+1)!!)`.
fn reduced_series(l: usize, s: f64) -> f64 {
    let mut term = 1.0;
    for j in 0..=l {
        term /= (2 * j + 1) as f64;
    }
    let q = -s / 2.0;
    let mut sum = term;
    for k in 1..2000 {
        term *= q / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn upward(l: usize, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for k in 1..l {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
