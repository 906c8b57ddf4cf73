//! The central extension `W̃` of a Coxeter group by `⟨z⟩ ≅ Z/2`, a section
//! built along the reflection conjugacy graph, and the resulting certificate
//! that `q⁺` and `q⁻` are twist equivalent.

mod certify;
mod section;
pub mod todd_coxeter;
mod wtilde;

use serde::Serialize;
use thiserror::Error;

pub use certify::{
    certify_twist, check_global, check_vendramin, conjugation_identity_witness, phi_rho, twist_witness, word_label,
    GroupCocycle2,
};
pub use section::Section;
pub use wtilde::{is_split, verify_split, wtilde_relators, ExtGroup};

use crate::coxeter::GroupTable;
use crate::racks::{cohomologous_solve, reflection_rack, SignCocycles, Which};

/// Failures of enumeration or certification. Everything except
/// `EnumerationOverflow` is a counterexample to a proven statement.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ExtensionError {
    #[error("coset enumeration exceeded {cap} live cosets")]
    EnumerationOverflow { cap: usize },
    #[error("the presentation forces z = 1")]
    PresentationCollapse,
    #[error("extension has order {found}, expected {expected}")]
    WrongOrder { expected: usize, found: usize },
    #[error("projection to W is inconsistent: {0}")]
    ProjectionMismatch(String),
    #[error("section of reflection {reflection:?} differs along paths {first:?} and {second:?}")]
    PathMismatch { reflection: Vec<usize>, first: Vec<usize>, second: Vec<usize> },
    #[error("Vendramin condition fails for s_{s} and y = {y}")]
    VendraminFailed { s: usize, y: String },
    #[error("global conjugation identity fails for w = {w}")]
    GlobalFailed { w: String },
    #[error("group cocycle identity fails at ({x}, {y}, {w})")]
    CocycleIdentityFailed { x: String, y: String, w: String },
    #[error("conjugation identity for φ_ρ fails at ({x}, {y})")]
    ConjugationIdentityFailed { x: String, y: String },
    #[error("twist relation between q+ and q- fails at ({x}, {y})")]
    TwistFailed { x: String, y: String },
    #[error("split = {split}, cohomologous = {cohomologous}, all entries odd = {all_odd} disagree")]
    CriteriaDisagree { split: bool, cohomologous: bool, all_odd: bool },
}

impl ExtensionError {
    pub fn is_falsification(&self) -> bool {
        !matches!(self, ExtensionError::EnumerationOverflow { .. })
    }
}

/// Outcome of the full twist-equivalence pipeline for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistCertificate {
    pub schema_version: &'static str,
    pub matrix: Vec<Vec<u32>>,
    pub order_w: usize,
    pub order_wtilde: usize,
    pub reflections: usize,
    pub all_odd: bool,
    pub split: bool,
    pub split_lift: Option<Vec<u8>>,
    pub cohomologous: bool,
    pub section: &'static str,
    pub vendramin: &'static str,
    pub global: &'static str,
    pub twist: &'static str,
    pub phi_support: usize,
    pub phi_checksum: String,
}

/// Builds `W̃` and `ρ`, runs every check, and cross-checks splitness against
/// the cohomology solver and the parity of the matrix entries.
pub fn certify(g: &GroupTable) -> Result<TwistCertificate, ExtensionError> {
    let e = ExtGroup::build(g)?;
    let graph = g.conjugacy_graph();
    let rho = Section::build(g, &e, &graph)?;
    check_vendramin(g, &e, &rho)?;
    let signs = SignCocycles::new(g);
    check_global(g, &e, &rho, &signs)?;
    let phi = phi_rho(g, &e, &rho);
    let (qp, qm) = (signs.on_reflections(g, Which::Plus), signs.on_reflections(g, Which::Minus));
    certify_twist(g, &e, &rho, &phi, &qp, &qm)?;

    let rack = reflection_rack(g);
    let cohomologous = cohomologous_solve(&qp, &qm, &rack).is_some();
    let split_lift = is_split(g.matrix());
    if let Some(eps) = &split_lift {
        if !verify_split(&e, g.matrix(), eps) {
            return Err(ExtensionError::ProjectionMismatch("claimed splitting fails in W̃".into()));
        }
    }
    let split = split_lift.is_some();
    let all_odd = g.matrix().all_odd();
    if split != cohomologous || split != all_odd {
        return Err(ExtensionError::CriteriaDisagree { split, cohomologous, all_odd });
    }
    Ok(TwistCertificate {
        schema_version: "twist_certificate.v1",
        matrix: g.matrix().entries().to_vec(),
        order_w: g.order(),
        order_wtilde: e.order(),
        reflections: g.num_reflections(),
        all_odd,
        split,
        split_lift,
        cohomologous,
        section: "pass",
        vendramin: "pass",
        global: "pass",
        twist: "pass",
        phi_support: phi.support_size(),
        phi_checksum: format!("{:016x}", phi.checksum(g)),
    })
}
