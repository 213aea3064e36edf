use thiserror::Error;

use crate::poly::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    NvarsMismatch { left: usize, right: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not normalized at the direction (f(e) != 1)")]
    NotNormalized,
    #[error("malformed rational number {0:?}")]
    BadRational(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("empty interval")]
    EmptyInterval,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypError {
    #[error("f vanishes at the direction e, so e is not a hyperbolicity direction")]
    NotHyperbolicDirection,
    #[error("f is the zero polynomial or has degree zero")]
    Degenerate,
    #[error("characteristic polynomial is not real-rooted at {witness:?}")]
    NotHyperbolicAt { witness: Vec<Rat> },
    #[error("stratum index {m} outside 1..={d}")]
    StratumOutOfRange { m: usize, d: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("elimination ideal is not zero-dimensional")]
    NonZeroDimensional,
    #[error("no separating linear form found after {attempts} attempts")]
    SeparationFailure { attempts: usize },
    #[error("resource budget exceeded")]
    BudgetExceeded,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HpError {
    #[error("objective is a multiple of the section form, the program is trivial")]
    DependentObjective,
    #[error("section form is identically zero")]
    ZeroSection,
    #[error("objective and section must have {expected} coefficients, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("derivative order {k} must be below the degree {d}")]
    DerivativeOrder { k: usize, d: usize },
    #[error(transparent)]
    Hyp(#[from] HypError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A solver failure on one stratum, tagged with the stratum index.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stratum m = {m}: {source}")]
pub struct StratumError {
    pub m: usize,
    #[source]
    pub source: SolveError,
}
