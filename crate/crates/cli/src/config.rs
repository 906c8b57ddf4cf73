use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coxnichols::nichols::Mode;
use coxnichols::CoxeterMatrix;

#[derive(Debug, Parser)]
#[command(name = "coxnichols", version, about = "Twist equivalence and Nichols algebra computations for finite Coxeter groups")]
pub struct Cli {
    /// Directory for cached group tables.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Group order, roots, reflection classes and odd components.
    Info {
        #[command(flatten)]
        source: SourceArgs,
        /// Include the q+ and q- cocycle tables on the reflections (JSON only).
        #[arg(long)]
        cocycles: bool,
    },
    /// Build the extension and section and certify that q+ and q- are twist equivalent.
    Certify {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Hilbert coefficients of the Nichols algebras of (T, q+) and (T, q-).
    Hilbert {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        ranks: RankArgs,
        /// Restrict to one reflection class, numbered from 1 as in `info`.
        #[arg(long, value_name = "T<k>")]
        subrack: Option<String>,
        /// Write the symmetrizer of each degree as triplets into this directory.
        #[arg(long, value_name = "DIR")]
        dump: Option<PathBuf>,
    },
    /// Admissible summands, compatibility and predicted dimensions over the dihedral group of order 4r.
    Dihedral {
        /// Odd r > 3.
        #[arg(long)]
        r: u32,
        /// Comma-separated summands such as `V0,V(5,1)`; defaults to all admissible ones.
        #[arg(long)]
        summands: Option<String>,
        /// Compare the predicted dimension with symmetrizer ranks.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        ranks: RankArgs,
    },
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Preset name (A3, B3, D4, H3, I2(5), ...) or path to a matrix file.
    #[arg(value_name = "PRESET_OR_FILE", conflicts_with_all = ["preset", "input"])]
    pub source: Option<String>,
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    /// Matrix file: the rank, then one row per line.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Highest degree.
    #[arg(long, default_value_t = 4)]
    pub dmax: usize,
    /// Number of primes in modular mode.
    #[arg(long, default_value_t = 2)]
    pub primes: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Modular)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Modular,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone)]
pub enum Input {
    Preset(String),
    File(PathBuf),
}

impl Input {
    pub fn matrix(&self) -> Result<CoxeterMatrix> {
        match self {
            Input::Preset(name) => Ok(CoxeterMatrix::preset(name)?),
            Input::File(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                CoxeterMatrix::parse_text(&text).with_context(|| format!("parsing {}", path.display()))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Input::Preset(name) => name.clone(),
            Input::File(path) => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Command {
    Info { cocycles: bool },
    Certify,
    Hilbert { subrack: Option<usize>, dump: Option<PathBuf> },
    Dihedral { r: u32, summands: Option<String>, check: bool },
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<Input>,
    pub command: Command,
    pub dmax: usize,
    pub mode: Mode,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl SourceArgs {
    fn resolve(self) -> Result<Input> {
        if let Some(name) = self.preset {
            return Ok(Input::Preset(name));
        }
        if let Some(path) = self.input {
            return Ok(Input::File(path));
        }
        match self.source {
            // A bare argument is a preset if it names one, otherwise a file.
            Some(s) if CoxeterMatrix::preset(&s).is_ok() => Ok(Input::Preset(s)),
            Some(s) if std::path::Path::new(&s).exists() => Ok(Input::File(s.into())),
            Some(s) => bail!("{s:?} is neither a known preset nor an existing file"),
            None => bail!("an input is required: a preset name, --preset NAME or --input FILE"),
        }
    }
}

impl RankArgs {
    fn mode(&self) -> Result<Mode> {
        match self.mode {
            ModeArg::Modular if self.primes < 2 => bail!("--primes must be at least 2 in modular mode"),
            ModeArg::Modular => Ok(Mode::Modular { primes: self.primes }),
            ModeArg::Exact => Ok(Mode::Exact),
        }
    }
}

fn parse_subrack(s: &str) -> Result<usize> {
    let k: usize = s
        .strip_prefix('T')
        .and_then(|n| n.parse().ok())
        .with_context(|| format!("--subrack expects T1, T2, ..., got {s:?}"))?;
    if k == 0 {
        bail!("reflection classes are numbered from T1");
    }
    Ok(k - 1)
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let format = if self.json { Format::Json } else { Format::Table };
        let (input, command, dmax, mode) = match self.command {
            CommandArgs::Info { source, cocycles } => {
                (Some(source.resolve()?), Command::Info { cocycles }, 0, Mode::Exact)
            }
            CommandArgs::Certify { source } => (Some(source.resolve()?), Command::Certify, 0, Mode::Exact),
            CommandArgs::Hilbert { source, ranks, subrack, dump } => {
                let subrack = subrack.as_deref().map(parse_subrack).transpose()?;
                (Some(source.resolve()?), Command::Hilbert { subrack, dump }, ranks.dmax, ranks.mode()?)
            }
            CommandArgs::Dihedral { r, summands, check, ranks } => {
                (None, Command::Dihedral { r, summands, check }, ranks.dmax, ranks.mode()?)
            }
        };
        Ok(RunConfig { input, command, dmax, mode, cache_dir: self.cache_dir, format })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        Cli::try_parse_from(std::iter::once("coxnichols").chain(args.iter().copied()))?.into_config()
    }

    #[test]
    fn inputs() {
        let c = config(&["hilbert", "A2", "--dmax", "5"]).unwrap();
        assert!(matches!(c.input, Some(Input::Preset(ref n)) if n == "A2"));
        assert_eq!(c.dmax, 5);
        assert_eq!(c.mode, Mode::Modular { primes: 2 });
        let c = config(&["certify", "--preset", "I2(5)", "--json"]).unwrap();
        assert_eq!(c.format, Format::Json);
        assert!(config(&["certify", "no-such-file"]).is_err());
        assert!(config(&["certify"]).is_err());
    }

    #[test]
    fn validation() {
        assert!(config(&["hilbert", "A2", "--primes", "1"]).is_err());
        assert!(config(&["hilbert", "A2", "--primes", "1", "--mode", "exact"]).is_ok());
        let c = config(&["hilbert", "B3", "--subrack", "T2"]).unwrap();
        assert!(matches!(c.command, Command::Hilbert { subrack: Some(1), .. }));
        assert!(config(&["hilbert", "B3", "--subrack", "T0"]).is_err());
        assert!(config(&["hilbert", "B3", "--subrack", "X"]).is_err());
    }
}
