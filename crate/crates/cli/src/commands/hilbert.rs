use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use anyhow::{bail, Context, Result};
use coxnichols::nichols::{hilbert_reports, sign_braiding, BraidedSpace, Symmetrizer, SymmetrizerReport, EXACT_BUDGET};
use coxnichols::racks::Which;

use super::load_group;
use crate::config::{Format, RunConfig};
use crate::Outcome;

const SIDES: [(Which, &str, &str); 2] = [(Which::Plus, "q+", "qplus"), (Which::Minus, "q-", "qminus")];

/// Triplet files for degrees `1..=dmax` while `d^n` stays within the exact
/// budget.
fn dump(space: &BraidedSpace, dmax: usize, dir: &Path, tag: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut s = Symmetrizer::new(space);
    for n in 1..=dmax {
        if (space.dim() as u64).pow(n as u32) > EXACT_BUDGET {
            break;
        }
        s.advance();
        let path = dir.join(format!("omega_{tag}_n{n}.txt"));
        s.write_triplets(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))?;
    }
    Ok(())
}

pub fn run(config: &RunConfig, subrack: Option<usize>, dump_dir: Option<&Path>) -> Result<Outcome> {
    let g = load_group(config)?;
    let indices: Vec<usize> = match subrack {
        None => (0..g.num_reflections()).collect(),
        Some(c) if c < g.classes().len() => g.classes()[c].clone(),
        Some(c) => bail!("T{} does not exist: the group has {} reflection classes", c + 1, g.classes().len()),
    };
    let mut series: Vec<Vec<SymmetrizerReport>> = Vec::new();
    for (which, _, tag) in SIDES {
        let space = sign_braiding(&g, which, &indices)?;
        if let Some(dir) = dump_dir {
            dump(&space, config.dmax, dir, tag)?;
        }
        series.push(hilbert_reports(&space, config.dmax, config.mode)?);
    }
    let equal = series[0].iter().zip(&series[1]).all(|(a, b)| a.rank == b.rank);

    if config.format == Format::Json {
        for ((_, name, _), reports) in SIDES.iter().zip(&series) {
            for r in reports {
                let mut v = serde_json::to_value(r)?;
                v.as_object_mut().expect("report is an object").insert("cocycle".into(), (*name).into());
                println!("{}", serde_json::to_string(&v)?);
            }
        }
    } else {
        let input = config.input.as_ref().map(|i| i.name()).unwrap_or_default();
        let class = subrack.map_or("T".to_string(), |c| format!("T{}", c + 1));
        let first = &series[0][0];
        let primes = if first.primes.is_empty() {
            String::new()
        } else {
            format!(" over p = {}", first.primes.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
        };
        println!("{input}, {class}: {} vectors, {} mode{primes}", indices.len(), first.mode);
        println!("{:>6} {:>12} {:>12}  equal", "degree", "q+", "q-");
        let cell = |r: &SymmetrizerReport| format!("{}{}", r.rank, if r.implied { "*" } else { "" });
        for (a, b) in series[0].iter().zip(&series[1]) {
            println!("{:>6} {:>12} {:>12}  {}", a.degree, cell(a), cell(b), yes_no(a.rank == b.rank));
        }
        let total = |s: &[SymmetrizerReport]| s.iter().map(|r| r.rank).sum::<u64>();
        let (ta, tb) = (total(&series[0]), total(&series[1]));
        println!("{:>6} {:>12} {:>12}  {}", "total", ta, tb, yes_no(ta == tb));
        if series[0].iter().any(|r| r.implied) {
            println!("* zero because a lower degree vanished");
        }
        let last = series[0].last().expect("degree 0");
        if last.rank == 0 {
            println!("both algebras are finite dimensional, of dimension {ta}");
        }
    }
    Ok(if equal { Outcome::Pass } else { Outcome::Falsified })
}

pub(super) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
