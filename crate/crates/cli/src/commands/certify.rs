use anyhow::{bail, Result};
use coxnichols::extension::certify;
use serde_json::json;

use super::{load_group, print_json};
use crate::config::RunConfig;
use crate::Outcome;

/// Prints the certificate, or the counterexample with exit status 2. The
/// output is JSON in either format and contains no timings, so it is
/// byte-identical across runs.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    let g = load_group(config)?;
    match certify(&g) {
        Ok(cert) => {
            print_json(&cert)?;
            Ok(Outcome::Pass)
        }
        Err(e) if e.is_falsification() => {
            print_json(&json!({
                "schema_version": "twist_certificate.v1",
                "matrix": g.matrix().entries(),
                "status": "falsified",
                "message": e.to_string(),
                "counterexample": e,
            }))?;
            Ok(Outcome::Falsified)
        }
        Err(e) => bail!(e),
    }
}
