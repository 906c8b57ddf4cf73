//! Braided vector spaces from racks with cocycles and from diagonal data,
//! quantum symmetrizers and the Hilbert coefficients of Nichols algebras.

mod braid;
mod braided;
pub mod dihedral;
mod field;
mod image;
pub mod linalg;
mod oracle;
mod quadratic;
mod symmetrizer;
pub mod yd;

use serde::Serialize;
use thiserror::Error;

pub use braid::{canonical_reduced_word, matsumoto, matsumoto_invariance_witness, permutations, reduced_words, BraidWord, MonomialOp};
pub use braided::{braiding_from_rack, sign_braiding, BraidedSpace};
pub use field::{select_primes, CyclotomicField, Field, PrimeField};
pub use image::{orbits, ImageChain};
pub use oracle::{factorized_symmetrizer, left_factorized_symmetrizer, literal_symmetrizer, oracle_mismatch, GroupRingMatrix};
pub use quadratic::{is_quadratic_through, quadratic_relations, quadratic_reports, QuadraticReport};
pub use symmetrizer::{
    hilbert_coeffs, hilbert_equal, hilbert_reports, symmetrizer_rank, GroupRingColumn, Mode, SymmetrizerReport, Symmetrizer,
    EXACT_BUDGET, MODULAR_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum NicholsError {
    #[error("braid equation fails on basis triple ({x}, {y}, {z})")]
    BraidEquationFailed { x: usize, y: usize, z: usize },
    #[error("braiding is not invertible: {0}")]
    NotInvertible(String),
    #[error("inconsistent shapes: {0}")]
    Shape(String),
    #[error("degree {degree} needs dimension {dim}, above the budget {budget}")]
    DegreeTooLarge { degree: usize, dim: u64, budget: u64 },
    #[error("prime selection failed: {0}")]
    PrimeGenerationFailed(String),
    #[error("ranks over different primes disagree in degree {degree}: {ranks:?}")]
    PrimesDisagree { degree: usize, ranks: Vec<u64> },
    #[error("V({h},{j}) is not admissible for r = {r}")]
    InvalidSummand { r: u32, h: u32, j: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the braiding is not diagonal")]
    NotDiagonal,
    #[error("not a Yetter-Drinfeld module: {0}")]
    NotAModule(String),
}
