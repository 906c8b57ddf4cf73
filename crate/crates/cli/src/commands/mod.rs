mod certify;
mod dihedral;
mod hilbert;
mod info;

use anyhow::{Context, Result};
use coxnichols::GroupTable;

use crate::cache;
use crate::config::{Command, RunConfig};
use crate::Outcome;

pub fn run(config: &RunConfig) -> Result<Outcome> {
    match &config.command {
        Command::Info { cocycles } => info::run(config, *cocycles),
        Command::Certify => certify::run(config),
        Command::Hilbert { subrack, dump } => hilbert::run(config, *subrack, dump.as_deref()),
        Command::Dihedral { r, summands, check } => dihedral::run(config, *r, summands.as_deref(), *check),
    }
}

/// The group named by the configured input, through the cache if one is set.
fn load_group(config: &RunConfig) -> Result<GroupTable> {
    let input = config.input.as_ref().context("this command needs an input")?;
    let matrix = input.matrix()?;
    let (g, _) = cache::load_or_build(&matrix, config.cache_dir.as_deref())
        .with_context(|| format!("enumerating the group of {}", input.name()))?;
    Ok(g)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}
