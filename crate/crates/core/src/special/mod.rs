//! Real special functions of integer order.
//!
//! Accuracy targets a relative error near 1e-12 on the ranges used by the wave
//! families (arguments up to a few hundred, orders up to about 20); the
//! recurrences in the test suite hold to 1e-9 or better.
//!
//! Associated Legendre functions follow the convention without the
//! Condon-Shortley phase: `P_ℓ^m(x) = (1 - x²)^{m/2} d^m P_ℓ/dx^m`.

mod bessel;
mod legendre;
mod modified;
mod spherical;

pub use bessel::{bessel_j, bessel_j_series};
pub use legendre::{legendre_p, legendre_poly_coeffs, poly_derivative};
pub use modified::{bessel_i_series, bessel_k};
pub use spherical::{spherical_j, spherical_reduced};

/// Accuracy contract for the special functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FnAccuracy {
    pub relative: f64,
    /// Largest argument covered by the tests for `J_n` and `j_ℓ`.
    pub max_arg: f64,
    /// Largest order covered by the tests.
    pub max_order: usize,
}

impl Default for FnAccuracy {
    fn default() -> Self {
        Self {
            relative: 1e-10,
            max_arg: 300.0,
            max_order: 20,
        }
    }
}
