use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid blade: {0}")]
    InvalidBlade(String),
    #[error("grade {0} out of range 0..=4")]
    InvalidGrade(usize),
    #[error("expected an even multivector, odd part has norm {0:e}")]
    NotEven(f64),
    #[error("expected a grade-{grade} multivector: {what}")]
    WrongGrade { grade: usize, what: String },
    #[error("rotor is not unit: |u ũ - 1| = {0:e}")]
    NonUnitRotor(f64),
    #[error("singular spinor (ψψ̃ ≈ 0, ratio {0:e}); Weyl values have no polar form")]
    SingularSpinor(f64),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("inconsistent dispersion data: {0}")]
    Dispersion(String),
    #[error("potential constraint violated: {0}")]
    Constraint(String),
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },
    #[error("field is singular at {0:?}")]
    Singular([f64; 4]),
    #[error("front tracking failed: {0}")]
    Front(String),
    #[error("convergence estimate needs at least 3 levels, got {0}")]
    TooFewLevels(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
