//! Finite Coxeter groups: enumeration, roots, reflections and the reflection
//! conjugacy graph.

mod chebyshev;
mod graph;
mod group;
mod matrix;

use thiserror::Error;

use crate::cyclo::CycloError;

pub use chebyshev::{chebyshev_sequence, chebyshev_sweep, chebyshev_u, ChebyshevOutcome, ChebyshevReport};
pub use graph::{mirror, mirror_at, ConjGraph, Trichotomy};
pub use group::{Element, GroupTable, DEFAULT_ELEMENT_CAP, DENSE_MULT_LIMIT, REDUCED_EXPRESSIONS_LIMIT};
pub use matrix::CoxeterMatrix;

/// Word over generator indices `0..rank`.
pub type Word = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("root or element enumeration exceeded the cap of {cap}; the group is infinite or the cap is too small")]
    NotFinite { cap: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("inconsistent group table: {0}")]
    CorruptTable(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}
