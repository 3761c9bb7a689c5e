//! Lattices, finite-difference Dirac and wave operators, residual norms and
//! convergence orders.
//!
//! The Dirac operator is `∂ = Σ γμ ∂μ` in global inertial coordinates; with
//! the flat metric there are no connection terms, and `∂² = □` on scalars.
//! Residuals of analytic fields are evaluated point by point on the stencil
//! interior of each level, so no 4D array is stored.

mod grid;
mod residual;
mod stencil;

pub use grid::{sample, Grid4, SampledField};
pub use residual::{
    convergence_order, dalembertian_residual, dirac_hestenes_residual, weyl_residual, Exclusion, LevelNorm, Order,
    Refinement, ResidualReport, Sampling, EXACT_THRESHOLD, ROUNDOFF_FACTOR,
};
pub use stencil::{dalembertian_at, dirac_at, dirac_fd, grade_split_check, partial_at, Scheme};

#[cfg(test)]
mod tests;
