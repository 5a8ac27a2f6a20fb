//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis vector has (near-)zero length")]
    ZeroAxis,

    #[error("elements do not commute: commutator norm {norm:.3e} exceeds tolerance {tol:.3e}")]
    NonCommuting { norm: f64, tol: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("braid closure is a link with {components} components, not a knot")]
    MultiComponentLink { components: usize },

    #[error("inconsistent PD code: {0}")]
    InconsistentPd(String),

    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("invalid slope ({p},{q})")]
    InvalidSlope { p: i64, q: i64 },

    #[error("slope {p}/{q} is out of range (requires 0 < p/q <= 2)")]
    SlopeOutOfRange { p: i64, q: i64 },

    #[error("word letter {letter} is out of range for {generators} generators")]
    IndexOutOfRange { letter: i32, generators: usize },

    #[error("no admissible perturbation curve found: {0}")]
    Infeasible(String),

    #[error("twist conventions disagree between image and reducible lines")]
    ConventionMismatch,

    #[error("certificate presentation hash does not match the supplied knot")]
    PresentationMismatch,

    #[error("slope (1,0) is the meridian filling and is reserved for hypothesis checks")]
    MeridianFilling,
}

pub type Result<T> = std::result::Result<T, Error>;
