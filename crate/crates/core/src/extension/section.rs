use super::{ExtGroup, ExtensionError};
use crate::coxeter::{ConjGraph, GroupTable, Word};

/// Set-theoretic section `ρ: W → W̃` of the projection.
///
/// On reflections `ρ` follows the conjugacy graph: `ρ(s_i) = t_i` and
/// `ρ(x) = t_j ▶ ρ(y) · z` for an edge `x →_j y`. Elsewhere it lifts the
/// canonical word letter by letter with no `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    rho: Vec<u32>,
}

impl Section {
    /// Builds `ρ` and certifies that every graph path from every reflection
    /// yields the same value.
    pub fn build(g: &GroupTable, e: &ExtGroup, graph: &ConjGraph) -> Result<Self, ExtensionError> {
        let mut rho: Vec<u32> = (0..g.order()).map(|w| e.lift(g.word(w), 0) as u32).collect();
        for k in 0..g.num_reflections() {
            let x = g.reflection(k);
            if graph.simple_generator(k).is_some() {
                continue;
            }
            let values: Vec<(usize, usize)> = graph
                .edges(k)
                .iter()
                .map(|&(j, y)| (j, e.times_z(e.conj(e.t(j), rho[g.reflection(y)] as usize), 1)))
                .collect();
            let (j0, v0) = values[0];
            if let Some(&(j1, _)) = values.iter().find(|&&(_, v)| v != v0) {
                let via = |j: usize| -> Word {
                    let y = graph.edges(k).iter().find(|&&(jj, _)| jj == j).expect("edge").1;
                    let inner = graph.path_words(y).into_iter().next().expect("path");
                    [vec![j], inner, vec![j]].concat()
                };
                return Err(ExtensionError::PathMismatch {
                    reflection: g.word(x).to_vec(),
                    first: via(j0),
                    second: via(j1),
                });
            }
            // The closed form t_{i_1}⋯t_{i_r} t_i t_{i_r}⋯t_{i_1} z^r along one path.
            let p = graph.path_words(k).into_iter().next().expect("path");
            let closed = e.lift(&p, (p.len() as u32 - 1) / 2);
            if closed != v0 {
                return Err(ExtensionError::PathMismatch { reflection: g.word(x).to_vec(), first: p.clone(), second: p });
            }
            rho[x] = v0 as u32;
        }
        for (w, &r) in rho.iter().enumerate() {
            if e.project(r as usize) != w {
                return Err(ExtensionError::ProjectionMismatch(format!("π_W ∘ ρ differs from the identity at {w}")));
            }
        }
        Ok(Section { rho })
    }

    /// Letter-by-letter lift of every canonical word, with no `z`.
    pub fn plain_lift(g: &GroupTable, e: &ExtGroup) -> Self {
        Section { rho: (0..g.order()).map(|w| e.lift(g.word(w), 0) as u32).collect() }
    }

    pub fn get(&self, w: usize) -> usize {
        self.rho[w] as usize
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn a2_values() {
        let g = GroupTable::build(&CoxeterMatrix::preset("A2").unwrap()).unwrap();
        let e = ExtGroup::build(&g).unwrap();
        let rho = Section::build(&g, &e, &g.conjugacy_graph()).unwrap();
        assert_eq!(rho.get(0), e.identity());
        assert_eq!(rho.get(g.generator(0)), e.t(0));
        assert_eq!(rho.get(g.generator(1)), e.t(1));
        let top = g.longest();
        assert_eq!(rho.get(top), e.lift(&[0, 1, 0], 1));
        assert_eq!(rho.get(top), e.lift(&[1, 0, 1], 1));
    }
}
