use std::collections::{BTreeSet, HashMap};

use super::{CoxeterError, GroupTable, Word, REDUCED_EXPRESSIONS_LIMIT};
use crate::cyclo::Sign;

/// Effect of conjugating `s_β` by a simple reflection `s_α` on length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    /// `ℓ(s_α s_β s_α) = ℓ(s_β) + 2`.
    Up,
    /// `ℓ(s_α s_β s_α) = ℓ(s_β) - 2`.
    Down,
    /// `s_α s_β = s_β s_α`.
    Commute,
}

/// `a[..pos] ++ [a[pos]] ++ reverse(a[..pos])`.
pub fn mirror_at(word: &[usize], pos: usize) -> Word {
    let mut out = word[..=pos].to_vec();
    out.extend(word[..pos].iter().rev());
    out
}

/// Mirror of an odd-length word around its centre letter.
pub fn mirror(word: &[usize]) -> Word {
    mirror_at(word, word.len() / 2)
}

/// Reflection conjugacy graph: an edge `x →_j y` whenever `y = s_j x s_j`
/// and `ℓ(x) = ℓ(y) + 2`. Vertices are reflection indices.
#[derive(Debug, Clone)]
pub struct ConjGraph {
    out: Vec<Vec<(usize, usize)>>,
    simple: Vec<Option<usize>>,
}

impl ConjGraph {
    pub fn build(g: &GroupTable) -> Self {
        let l = g.rank();
        let mut out = vec![Vec::new(); g.num_reflections()];
        let mut simple = vec![None; g.num_reflections()];
        for (k, x) in g.reflections().enumerate() {
            if g.length(x) == 1 {
                simple[k] = Some(g.word(x)[0]);
            }
            for j in 0..l {
                let y = g.left_mul(j, g.right_mul(x, j));
                if g.length(y) + 2 == g.length(x) {
                    out[k].push((j, g.reflection_index(y).expect("conjugate of a reflection")));
                }
            }
        }
        let graph = ConjGraph { out, simple };
        graph.assert_shape(g);
        graph
    }

    // Sinks are exactly the simple reflections, so every maximal path from
    // `x` has `(ℓ(x) - 1) / 2` edges.
    fn assert_shape(&self, g: &GroupTable) {
        for k in 0..self.out.len() {
            assert_eq!(
                self.out[k].is_empty(),
                self.simple[k].is_some(),
                "reflection {k} of length {} has the wrong out-degree",
                g.length(g.reflection(k))
            );
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Outgoing edges `(generator, target)` of a reflection.
    pub fn edges(&self, x: usize) -> &[(usize, usize)] {
        &self.out[x]
    }

    /// Generator index if `x` is a simple reflection.
    pub fn simple_generator(&self, x: usize) -> Option<usize> {
        self.simple[x]
    }

    /// Follows first edges down to a simple reflection.
    pub fn descend(&self, mut x: usize) -> usize {
        loop {
            match (self.simple[x], self.out[x].first()) {
                (Some(j), _) => return j,
                (None, Some(&(_, y))) => x = y,
                (None, None) => unreachable!("non-simple reflection without out-edges"),
            }
        }
    }

    /// Words `[j₁ … j_r, j, j_r … j₁]` read off all maximal paths from `x`.
    pub fn path_words(&self, x: usize) -> BTreeSet<Word> {
        let mut memo = HashMap::new();
        self.path_words_memo(x, &mut memo)
    }

    fn path_words_memo(&self, x: usize, memo: &mut HashMap<usize, BTreeSet<Word>>) -> BTreeSet<Word> {
        if let Some(s) = memo.get(&x) {
            return s.clone();
        }
        let res: BTreeSet<Word> = match self.simple[x] {
            Some(j) => BTreeSet::from([vec![j]]),
            None => {
                let mut set = BTreeSet::new();
                for &(j, y) in &self.out[x] {
                    for p in self.path_words_memo(y, memo) {
                        let mut w = Vec::with_capacity(p.len() + 2);
                        w.push(j);
                        w.extend(p);
                        w.push(j);
                        set.insert(w);
                    }
                }
                set
            }
        };
        memo.insert(x, res.clone());
        res
    }

    /// Number of edges on every maximal path from `x`; panics if two paths
    /// differ.
    pub fn path_depth(&self, x: usize) -> usize {
        if self.simple[x].is_some() {
            return 0;
        }
        let depths: BTreeSet<usize> = self.out[x].iter().map(|&(_, y)| self.path_depth(y) + 1).collect();
        assert_eq!(depths.len(), 1, "paths from reflection {x} have different lengths");
        *depths.first().expect("one depth")
    }
}

impl GroupTable {
    pub fn conjugacy_graph(&self) -> ConjGraph {
        ConjGraph::build(self)
    }

    /// Classifies conjugation of positive root `beta` by simple reflection
    /// `i` from the sign of `(α_i, β)`, checked against actual lengths.
    pub fn length_trichotomy(&self, beta: usize, i: usize) -> Result<Trichotomy, CoxeterError> {
        let l = self.rank();
        let mut e = vec![crate::CycloNumber::zero_in(self.ring()); l];
        e[i] = crate::CycloNumber::from_int_in(self.ring(), 1);
        let tag = if beta == i {
            Trichotomy::Commute
        } else {
            match self.form(&e, self.root(beta)).sign_real()? {
                Sign::Negative => Trichotomy::Up,
                Sign::Positive => Trichotomy::Down,
                Sign::Zero => Trichotomy::Commute,
            }
        };
        let x = self.reflection(beta);
        let y = self.left_mul(i, self.right_mul(x, i));
        let actual = match self.length(y) as i64 - self.length(x) as i64 {
            2 => Trichotomy::Up,
            -2 => Trichotomy::Down,
            0 if y == x => Trichotomy::Commute,
            d => panic!("conjugating reflection {beta} by s_{i} changed the length by {d}"),
        };
        assert_eq!(tag, actual, "length trichotomy mismatch for root {beta}, generator {i}");
        Ok(tag)
    }

    /// All reduced words of `x`.
    pub fn reduced_expressions(&self, x: usize) -> Result<BTreeSet<Word>, CoxeterError> {
        if self.order() > REDUCED_EXPRESSIONS_LIMIT {
            return Err(CoxeterError::TooLarge(format!(
                "reduced_expressions needs |W| <= {REDUCED_EXPRESSIONS_LIMIT}, got {}",
                self.order()
            )));
        }
        let mut memo = HashMap::new();
        Ok(self.reduced_memo(x, &mut memo))
    }

    fn reduced_memo(&self, x: usize, memo: &mut HashMap<usize, BTreeSet<Word>>) -> BTreeSet<Word> {
        if x == 0 {
            return BTreeSet::from([Vec::new()]);
        }
        if let Some(s) = memo.get(&x) {
            return s.clone();
        }
        let mut set = BTreeSet::new();
        for j in self.left_descents(x) {
            for w in self.reduced_memo(self.left_mul(j, x), memo) {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(j);
                v.extend(w);
                set.insert(v);
            }
        }
        memo.insert(x, set.clone());
        set
    }

    /// Palindromic reduced words of reflection `k`.
    ///
    /// Computed from the conjugacy graph paths. For groups within the
    /// reduced-expression limit, also checked to equal both the mirrors of
    /// all reduced words and the palindromes among them.
    pub fn palindromic_expressions(&self, k: usize, graph: &ConjGraph) -> BTreeSet<Word> {
        let from_paths = graph.path_words(k);
        if let Ok(reduced) = self.reduced_expressions(self.reflection(k)) {
            let mirrored: BTreeSet<Word> = reduced.iter().map(|a| mirror(a)).collect();
            let palindromes: BTreeSet<Word> =
                reduced.iter().filter(|a| a.iter().eq(a.iter().rev())).cloned().collect();
            assert_eq!(mirrored, palindromes, "mirrored words differ from palindromic reduced words");
            assert_eq!(from_paths, palindromes, "graph path words differ from palindromic reduced words");
        }
        from_paths
    }
}

/// Conjugacy classes of reflections computed twice: from components of the
/// odd-labelled Coxeter graph and from conjugation orbits.
pub(super) fn reflection_classes_checked(g: &GroupTable) -> Result<Vec<Vec<usize>>, CoxeterError> {
    let graph = ConjGraph::build(g);
    let comp = g.matrix().odd_components();
    let ncomp = comp.iter().max().map_or(0, |&c| c + 1);
    let mut by_component = vec![Vec::new(); ncomp];
    for k in 0..g.num_reflections() {
        by_component[comp[graph.descend(k)]].push(k);
    }

    let n = g.num_reflections();
    let mut orbit_id = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_id[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = g.reflection(members[i]);
            for j in 0..g.rank() {
                let y = g.reflection_index(g.left_mul(j, g.right_mul(x, j))).expect("reflection");
                if orbit_id[y] == usize::MAX {
                    orbit_id[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let mut a = by_component.clone();
    a.sort();
    orbits.sort();
    if a != orbits {
        return Err(CoxeterError::CorruptTable(
            "odd-component classes differ from conjugation orbits".into(),
        ));
    }
    Ok(by_component)
}

#[cfg(test)]
mod tests {
    use super::super::CoxeterMatrix;
    use super::*;

    fn g(name: &str) -> GroupTable {
        GroupTable::build(&CoxeterMatrix::preset(name).unwrap()).unwrap()
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror_at(&[1, 2, 1, 3], 1), vec![1, 2, 1]);
        assert_eq!(mirror(&[0, 1, 2, 1, 0]), vec![0, 1, 2, 1, 0]);
        assert_eq!(mirror(&[0, 1, 2, 0, 1]), vec![0, 1, 2, 1, 0]);
        let p = vec![3, 1, 4, 1, 3];
        assert_eq!(mirror(&mirror(&p)), p);
    }

    #[test]
    fn class_sizes() {
        let sizes = |name: &str| g(name).classes().iter().map(Vec::len).collect::<Vec<_>>();
        assert_eq!(sizes("A1"), vec![1]);
        assert_eq!(sizes("A4"), vec![10]);
        assert_eq!(sizes("I2(4)"), vec![2, 2]);
        assert_eq!(sizes("I2(6)"), vec![3, 3]);
        assert_eq!(sizes("B3"), vec![6, 3]);
        assert_eq!(sizes("B4"), vec![12, 4]);
        assert_eq!(sizes("F4"), vec![12, 12]);
        assert_eq!(sizes("H3"), vec![15]);
    }

    #[test]
    fn a2_graph() {
        let t = g("A2");
        let graph = t.conjugacy_graph();
        let top = t.reflection_index(t.longest()).unwrap();
        assert_eq!(graph.edges(top), &[(0, 1), (1, 0)]);
        assert!(graph.edges(0).is_empty() && graph.edges(1).is_empty());
        let p = t.palindromic_expressions(top, &graph);
        assert_eq!(p, BTreeSet::from([vec![0, 1, 0], vec![1, 0, 1]]));
        assert_eq!(t.palindromic_expressions(0, &graph), BTreeSet::from([vec![0]]));
        assert_eq!(g("A1").conjugacy_graph().num_edges(), 0);
    }

    #[test]
    fn i2_4_length_three_has_one_edge() {
        let t = g("I2(4)");
        let graph = t.conjugacy_graph();
        for k in 0..t.num_reflections() {
            if t.length(t.reflection(k)) == 3 {
                assert_eq!(graph.edges(k).len(), 1);
            }
        }
    }

    #[test]
    fn paths_have_equal_depth_and_match_palindromes() {
        for name in ["A3", "B3", "H3", "D4", "I2(7)"] {
            let t = g(name);
            let graph = t.conjugacy_graph();
            for k in 0..t.num_reflections() {
                assert_eq!(graph.path_depth(k), (t.length(t.reflection(k)) - 1) / 2);
                for w in t.palindromic_expressions(k, &graph) {
                    assert_eq!(t.element_of_word(&w), t.reflection(k));
                    assert!(t.is_reduced(&w));
                }
            }
        }
    }

    #[test]
    fn trichotomy() {
        let t = g("A2");
        assert_eq!(t.length_trichotomy(0, 0).unwrap(), Trichotomy::Commute);
        assert_eq!(t.length_trichotomy(1, 0).unwrap(), Trichotomy::Up);
        assert_eq!(t.length_trichotomy(2, 0).unwrap(), Trichotomy::Down);
        for name in ["B3", "H3", "I2(8)"] {
            let t = g(name);
            for k in 0..t.num_reflections() {
                for i in 0..t.rank() {
                    t.length_trichotomy(k, i).unwrap();
                }
            }
        }
    }

    #[test]
    fn reduced_expressions_of_longest_a3() {
        let t = g("A3");
        assert_eq!(t.reduced_expressions(t.longest()).unwrap().len(), 16);
        assert_eq!(t.reduced_expressions(1).unwrap(), BTreeSet::from([vec![0]]));
    }
}
