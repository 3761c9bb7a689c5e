//! Dirac-representation 4×4 complex matrices, used as an independent oracle
//! for the blade-table product.

use num_complex::Complex64;

use super::{Blade, CMv, Multivector, Scalar};

pub type Mat4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = ONE;
    }
    m
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s = ZERO;
            for k in 0..4 {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

fn mat_scale_add(acc: &mut Mat4, m: &Mat4, s: Complex64) {
    for i in 0..4 {
        for j in 0..4 {
            acc[i][j] += m[i][j] * s;
        }
    }
}

/// Standard Dirac-representation gamma matrix for generator `mu`.
pub fn gamma_matrix(mu: usize) -> Mat4 {
    let sigma: [[Complex64; 2]; 2] = match mu {
        0 => {
            let mut m = [[ZERO; 4]; 4];
            m[0][0] = ONE;
            m[1][1] = ONE;
            m[2][2] = -ONE;
            m[3][3] = -ONE;
            return m;
        }
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("generator index {mu} out of range"),
    };
    let mut m = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j + 2] = sigma[i][j];
            m[i + 2][j] = -sigma[i][j];
        }
    }
    m
}

fn blade_matrix(b: Blade) -> Mat4 {
    b.indices()
        .into_iter()
        .fold(identity(), |acc, mu| mat_mul(&acc, &gamma_matrix(mu)))
}

/// Matrix image of a multivector under the Dirac representation.
pub fn matrix_rep<S: Scalar>(a: &Multivector<S>) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for b in Blade::canonical() {
        let c = a.coeff(b).to_complex();
        if c != ZERO {
            mat_scale_add(&mut out, &blade_matrix(b), c);
        }
    }
    out
}

/// Inverse of [`matrix_rep`] by trace projection: the coefficient of blade `B`
/// is `tr(M(B)⁻¹ X) / 4`.
pub fn from_matrix(x: &Mat4) -> CMv {
    let mut out = CMv::zero();
    for b in Blade::canonical() {
        let blade = Multivector::<f64>::blade(b);
        // B B̃ = ±1 for a unit blade
        let norm = (blade * blade.reverse()).scalar_part();
        let inv = matrix_rep(&blade.reverse().scale(1.0 / norm));
        let prod = mat_mul(&inv, x);
        let tr = prod[0][0] + prod[1][1] + prod[2][2] + prod[3][3];
        out.set_coeff(b, tr / 4.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Mv, METRIC};

    fn max_diff(a: &Mat4, b: &Mat4) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((a[i][j] - b[i][j]).norm());
            }
        }
        m
    }

    #[test]
    fn identity_maps_to_identity() {
        assert_eq!(matrix_rep(&Mv::one()), identity());
    }

    #[test]
    fn gamma_matrices_satisfy_clifford_relation() {
        for mu in 0..4 {
            for nu in 0..4 {
                let a = mat_mul(&gamma_matrix(mu), &gamma_matrix(nu));
                let b = mat_mul(&gamma_matrix(nu), &gamma_matrix(mu));
                let mut sum = [[ZERO; 4]; 4];
                mat_scale_add(&mut sum, &a, ONE);
                mat_scale_add(&mut sum, &b, ONE);
                let mut expected = [[ZERO; 4]; 4];
                if mu == nu {
                    mat_scale_add(&mut expected, &identity(), ONE * (2.0 * METRIC[mu]));
                }
                assert!(max_diff(&sum, &expected) == 0.0, "μ={mu} ν={nu}");
            }
        }
    }

    #[test]
    fn gamma5_squares_to_minus_identity() {
        let g5 = matrix_rep(&Mv::pseudoscalar());
        let sq = mat_mul(&g5, &g5);
        let mut minus = [[ZERO; 4]; 4];
        mat_scale_add(&mut minus, &identity(), -ONE);
        assert!(max_diff(&sq, &minus) < 1e-15);
    }
}
