use anyhow::{bail, Result};
use coxnichols::nichols::dihedral::{admissible_summands, compatible, dihedral_yd, dynkin_diagram, DynkinDiagram, Summand};
use coxnichols::nichols::hilbert_coeffs;
use serde::Serialize;

use super::hilbert::yes_no;
use super::print_json;
use crate::config::{Format, RunConfig};
use crate::Outcome;

#[derive(Serialize)]
struct Check {
    coefficients: Vec<u64>,
    binomials: Vec<u64>,
    agree: bool,
}

#[derive(Serialize)]
struct IncompatiblePair {
    first: String,
    second: String,
    diagram: DynkinDiagram,
    /// `ξ` as an exponent of `ζ_{2r}` when the diagram is the expected 4-cycle.
    four_cycle: Option<u32>,
}

#[derive(Serialize)]
struct DihedralReport {
    schema_version: &'static str,
    r: u32,
    admissible: Vec<String>,
    selected: Vec<String>,
    compatibility: Vec<Vec<bool>>,
    compatible: bool,
    dim: usize,
    /// `2^dim` when every pair is compatible.
    predicted: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<Check>,
    incompatible_pairs: Vec<IncompatiblePair>,
}

fn binomials(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn parse_summands(list: &str) -> Result<Vec<Summand>> {
    // Split on commas outside parentheses.
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&list[start..]);
    Ok(parts.into_iter().filter(|p| !p.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?)
}

pub fn run(config: &RunConfig, r: u32, list: Option<&str>, check: bool) -> Result<Outcome> {
    if r <= 3 || r.is_multiple_of(2) {
        bail!("the dihedral classification requires r > 3 and odd, got r = {r}");
    }
    let admissible = admissible_summands(r)?;
    let selected = match list {
        Some(s) => parse_summands(s)?,
        None => admissible.clone(),
    };
    if selected.is_empty() {
        bail!("no summands selected");
    }
    // Validates admissibility of every selected summand.
    let space = dihedral_yd(r, &selected)?;
    let compatibility: Vec<Vec<bool>> =
        selected.iter().map(|&a| selected.iter().map(|&b| compatible(r, a, b)).collect()).collect();
    let all_compatible = compatibility.iter().flatten().all(|&c| c);
    let dim = space.dim();
    let predicted = all_compatible.then(|| 1u64 << dim);

    let mut incompatible_pairs = Vec::new();
    for (i, &a) in selected.iter().enumerate() {
        for &b in &selected[i + 1..] {
            if !compatible(r, a, b) {
                let diagram = dynkin_diagram(&dihedral_yd(r, &[a, b])?)?;
                let four_cycle = diagram.four_cycle_label();
                incompatible_pairs.push(IncompatiblePair { first: a.label(), second: b.label(), diagram, four_cycle });
            }
        }
    }
    let check = if check && all_compatible {
        let coefficients = hilbert_coeffs(&space, dim + 1, config.mode)?;
        let mut binomials = binomials(dim);
        binomials.push(0);
        let agree = coefficients == binomials;
        Some(Check { coefficients, binomials, agree })
    } else {
        None
    };
    let report = DihedralReport {
        schema_version: "dihedral_report.v1",
        r,
        admissible: admissible.iter().map(Summand::label).collect(),
        selected: selected.iter().map(Summand::label).collect(),
        compatibility,
        compatible: all_compatible,
        dim,
        predicted,
        check,
        incompatible_pairs,
    };
    let falsified = report.check.as_ref().is_some_and(|c| !c.agree)
        || report.incompatible_pairs.iter().any(|p| p.four_cycle.is_none());

    if config.format == Format::Json {
        print_json(&report)?;
    } else {
        print_table(&report);
    }
    Ok(if falsified { Outcome::Falsified } else { Outcome::Pass })
}

fn print_table(rep: &DihedralReport) {
    let k = 2 * rep.r;
    println!("r = {}, z a primitive root of unity of order {k}", rep.r);
    println!("admissible summands: {}", rep.admissible.join(", "));
    println!("selected: {}", rep.selected.join(" + "));
    let w = rep.selected.iter().map(String::len).max().unwrap_or(0).max(3);
    print!("{:w$}", "");
    for s in &rep.selected {
        print!("  {s:>w$}");
    }
    println!();
    for (s, row) in rep.selected.iter().zip(&rep.compatibility) {
        print!("{s:w$}");
        for &c in row {
            print!("  {:>w$}", yes_no(c));
        }
        println!();
    }
    match rep.predicted {
        Some(p) => println!("compatible: dim V = {}, predicted dim B(V) = 2^{} = {p}", rep.dim, rep.dim),
        None => println!("not compatible: no prediction for dim V = {}", rep.dim),
    }
    if let Some(c) = &rep.check {
        let fmt = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        println!("symmetrizer ranks: {}", fmt(&c.coefficients));
        println!("binomials:         {}", fmt(&c.binomials));
        println!("agree: {}", yes_no(c.agree));
    }
    for p in &rep.incompatible_pairs {
        println!("incompatible pair {} + {}:", p.first, p.second);
        let verts: Vec<String> = p.diagram.vertices.iter().map(|e| format!("z^{e}")).collect();
        println!("  vertices: {}", verts.join(", "));
        for &(a, b, e) in &p.diagram.edges {
            println!("  edge {a} - {b}: z^{e}");
        }
        match p.four_cycle {
            Some(xi) => println!("  4-cycle of -1 vertices with edges xi, xi^-1, xi = z^{xi}"),
            None => println!("  not the expected 4-cycle"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summand_lists() {
        let s = parse_summands("V0, V(5,1),V(5,3)").unwrap();
        assert_eq!(s, vec![Summand::V0, Summand::V { h: 5, j: 1 }, Summand::V { h: 5, j: 3 }]);
        assert!(parse_summands("V0,V(5").is_err());
    }

    #[test]
    fn pascal() {
        assert_eq!(binomials(4), vec![1, 4, 6, 4, 1]);
        assert_eq!(binomials(0), vec![1]);
    }
}
