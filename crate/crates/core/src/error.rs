use thiserror::Error;

use crate::laurent::LaurentError;
use crate::weightlat::{Shape, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: Shape, found: Shape },
    #[error("generator s{index} is not available for shape {shape}")]
    InvalidGenerator { index: usize, shape: Shape },
    #[error("{0} is not anti-dominant for the given parabolic")]
    NotAntiDominant(String),
    #[error("{tuple} leaves the window {window}; enlarge the window")]
    WindowEscape { tuple: String, window: Window },
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error("linear system has more than one solution: {0}")]
    NonUnique(String),
    #[error("coefficient {d} at {g} is not bar-antisymmetric")]
    AntisymmetryViolation { g: String, d: String },
    #[error("vector does not lie in the symmetrized subspace: {0}")]
    ReexpressionFailure(String),
    #[error("identity check failed: {0}")]
    IdentityViolation(String),
    #[error("could not write output: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;
