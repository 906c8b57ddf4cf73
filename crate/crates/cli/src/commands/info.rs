use anyhow::Result;
use coxnichols::extension::word_label;
use coxnichols::racks::{SignCocycles, Which};
use coxnichols::GroupTable;
use serde::Serialize;

use super::{load_group, print_json};
use crate::config::{Format, RunConfig};
use crate::Outcome;

#[derive(Serialize)]
struct ClassInfo {
    name: String,
    size: usize,
    /// 1-based simple generators in the class.
    generators: Vec<usize>,
}

#[derive(Serialize)]
struct GroupInfo {
    schema_version: &'static str,
    matrix: Vec<Vec<u32>>,
    order: usize,
    positive_roots: usize,
    reflections: usize,
    classes: Vec<ClassInfo>,
    /// 1-based generators of each component of the odd-bond graph.
    odd_components: Vec<Vec<usize>>,
    all_odd: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cocycles: Option<serde_json::Value>,
}

fn group_info(g: &GroupTable, cocycles: bool) -> GroupInfo {
    let classes = g
        .classes()
        .iter()
        .enumerate()
        .map(|(c, class)| ClassInfo {
            name: format!("T{}", c + 1),
            size: class.len(),
            generators: (0..g.rank()).filter(|&i| class.iter().any(|&k| g.reflection(k) == g.generator(i))).map(|i| i + 1).collect(),
        })
        .collect();
    let comp = g.matrix().odd_components();
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    let odd_components = (0..ncomp).map(|c| (0..g.rank()).filter(|&i| comp[i] == c).map(|i| i + 1).collect()).collect();
    let cocycles = cocycles.then(|| {
        let signs = SignCocycles::new(g);
        let labels: Vec<String> = g.reflections().map(|x| word_label(g.word(x))).collect();
        serde_json::json!({
            "q+": signs.on_reflections(g, Which::Plus).to_json(&labels),
            "q-": signs.on_reflections(g, Which::Minus).to_json(&labels),
        })
    });
    GroupInfo {
        schema_version: "group_info.v1",
        matrix: g.matrix().entries().to_vec(),
        order: g.order(),
        positive_roots: g.num_positive_roots(),
        reflections: g.num_reflections(),
        classes,
        odd_components,
        all_odd: g.matrix().all_odd(),
        cocycles,
    }
}

pub fn run(config: &RunConfig, cocycles: bool) -> Result<Outcome> {
    let g = load_group(config)?;
    let info = group_info(&g, cocycles);
    if config.format == Format::Json {
        print_json(&info)?;
        return Ok(Outcome::Pass);
    }
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    println!("matrix:");
    for row in &info.matrix {
        println!("  {}", row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
    }
    println!("|W|      = {}", info.order);
    println!("|Phi+|   = {}", info.positive_roots);
    println!("|T|      = {}", info.reflections);
    println!("reflection classes: {}", info.classes.len());
    for c in &info.classes {
        println!("  {}: {} reflections, generators {{{}}}", c.name, c.size, join(&c.generators));
    }
    let comps: Vec<String> = info.odd_components.iter().map(|c| format!("{{{}}}", join(c))).collect();
    println!("odd components: {} {}", comps.len(), comps.join(" "));
    println!("all entries odd: {}", if info.all_odd { "yes" } else { "no" });
    Ok(Outcome::Pass)
}
