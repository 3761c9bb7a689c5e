//! Spacetime-algebra field engine for Weyl and Dirac-Hestenes fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`clifford`]: Cl(1,3) arithmetic over real or complex scalars, with a
//!   Dirac-matrix oracle.
//! - [`spinor`]: Weyl projections, parity, polar form, frame changes, currents.
//! - [`special`]: Bessel, spherical Bessel, modified Bessel and Legendre functions.
//! - [`waves`]: closed-form wave-equation solutions with analytic gradients,
//!   dispersion and axicon kinematics.
//! - [`potential`]: generalized potentials and the Weyl fields they generate.
//! - [`calculus`]: grids, finite-difference Dirac operator, residual norms and
//!   convergence orders.
//! - [`xpulse`]: the gated X-pulse boundary problem and front tracking.
//! - [`observables`]: energy-momentum 1-forms and windowed energies.
//! - [`gauge`]: duality rotations, chirally coupled equations, gauge checks.
//!
//! Units have `c = ħ = 1`; events are `[t, x, y, z]`.

pub mod calculus;
pub mod clifford;
pub mod error;
pub mod exec;
pub mod field;
pub mod gauge;
pub mod observables;
pub mod potential;
pub mod quadrature;
pub mod special;
pub mod spinor;
pub mod waves;
pub mod xpulse;

pub use clifford::{Blade, CMv, Multivector, Mv, Scalar};
pub use error::{Error, Result};
pub use exec::Exec;
pub use field::{MultivectorField, Point4, ScalarField};
pub use num_complex::Complex64;
