//! Exact computations around finite Coxeter groups: root systems and
//! reflections, the reflection rack with its sign cocycles, the central
//! extension by `⟨z⟩` together with a section certifying twist equivalence,
//! and Hilbert coefficients of Nichols algebras through quantum symmetrizers.

pub mod coxeter;
pub mod cyclo;
pub mod extension;
pub mod gf2;
pub mod nichols;
pub mod racks;

use num_bigint::BigInt;

/// Exact element of a cyclotomic field with arbitrary-precision rationals.
pub type CycloNumber = cyclo::Cyclo<BigInt>;

/// Cyclotomic element with machine-size rational coefficients.
pub type SmallCycloNumber = cyclo::Cyclo<i64>;

pub use coxeter::{CoxeterMatrix, GroupTable};
pub use racks::{Rack, RackCocycle};
pub use nichols::{BraidedSpace, Mode, SymmetrizerReport};
