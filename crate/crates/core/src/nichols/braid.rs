use std::collections::BTreeSet;

use itertools::Itertools;

use super::BraidedSpace;

/// Operator on `V^{⊗n}` sending each basis tensor `e_v` to
/// `ζ^{exp[v]} e_{perm[v]}`. Basis index `v = Σ x_i d^{n-1-i}`, so the
/// leftmost tensor factor is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOp {
    k: u32,
    perm: Vec<u32>,
    exp: Vec<u32>,
}

impl MonomialOp {
    pub fn identity(k: u32, size: usize) -> Self {
        MonomialOp { k, perm: (0..size as u32).collect(), exp: vec![0; size] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `(target, exponent)` of `e_v`.
    pub fn image(&self, v: usize) -> (usize, u32) {
        (self.perm[v] as usize, self.exp[v])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonomialOp) -> MonomialOp {
        let (perm, exp) = other
            .perm
            .iter()
            .zip(&other.exp)
            .map(|(&t, &e)| (self.perm[t as usize], (e + self.exp[t as usize]) % self.k))
            .unzip();
        MonomialOp { k: self.k, perm, exp }
    }

    /// `ρ(σ_i^{±1})` on `V^{⊗n}` for `1 ≤ i < n`.
    pub fn generator(v: &BraidedSpace, n: usize, i: usize, inverse: bool) -> MonomialOp {
        assert!(1 <= i && i < n, "σ_{i} on {n} strands");
        let d = v.dim();
        let size = d.pow(n as u32);
        let hi = d.pow((n - i) as u32);
        let lo = hi / d;
        let (perm, exp) = (0..size)
            .map(|w| {
                let (x, y) = ((w / hi) % d, (w / lo) % d);
                let ((a, b), e) = if inverse { v.apply_inverse(x, y) } else { v.apply(x, y) };
                let t = w - x * hi - y * lo + a * hi + b * lo;
                (t as u32, e)
            })
            .unzip();
        MonomialOp { k: v.modulus(), perm, exp }
    }
}

/// Word in `σ_1^{±1}, …, σ_{n-1}^{±1}`; entry `+i` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    /// `ρ(w_1 ⋯ w_r) = ρ(w_1) ∘ ⋯ ∘ ρ(w_r)` on `n` strands.
    pub fn operator(&self, v: &BraidedSpace, n: usize) -> MonomialOp {
        let size = v.dim().pow(n as u32);
        self.0.iter().fold(MonomialOp::identity(v.modulus(), size), |acc, &g| {
            acc.compose(&MonomialOp::generator(v, n, g.unsigned_abs() as usize, g < 0))
        })
    }
}

/// Permutations of `0..n` in one-line notation, lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Right descents `i` (0-based) with `π(i) > π(i+1)`.
fn descents(p: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..p.len().saturating_sub(1)).filter(move |&i| p[i] > p[i + 1])
}

/// All reduced words of `π` in the adjacent transpositions `s_1 … s_{n-1}`
/// (1-based), where `π = s_{w_1} ⋯ s_{w_r}` acts on positions.
pub fn reduced_words(p: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let ds: Vec<usize> = descents(p).collect();
    if ds.is_empty() {
        out.insert(Vec::new());
        return out;
    }
    for i in ds {
        let mut q = p.to_vec();
        q.swap(i, i + 1);
        for mut w in reduced_words(&q) {
            w.push(i + 1);
            out.insert(w);
        }
    }
    out
}

/// One fixed reduced word of `π`: peel off the first right descent.
pub fn canonical_reduced_word(p: &[usize]) -> Vec<usize> {
    let mut q = p.to_vec();
    let mut w = Vec::new();
    loop {
        let Some(i) = descents(&q).next() else { break };
        q.swap(i, i + 1);
        w.push(i + 1);
    }
    w.reverse();
    w
}

/// The positive braid lift of `π` read off a reduced word.
pub fn matsumoto(p: &[usize]) -> BraidWord {
    BraidWord(canonical_reduced_word(p).into_iter().map(|i| i as i32).collect())
}

/// First `π ∈ S_n` with two reduced words inducing different operators.
pub fn matsumoto_invariance_witness(v: &BraidedSpace, n: usize) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let gens: Vec<MonomialOp> = (1..n).map(|i| MonomialOp::generator(v, n, i, false)).collect();
    let size = v.dim().pow(n as u32);
    let op = |w: &[usize]| w.iter().fold(MonomialOp::identity(v.modulus(), size), |acc, &i| acc.compose(&gens[i - 1]));
    for p in permutations(n) {
        let words: Vec<Vec<usize>> = reduced_words(&p).into_iter().collect();
        let first = op(&words[0]);
        if let Some(w) = words[1..].iter().find(|w| op(w) != first) {
            return Some((p, words[0].clone(), w.clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply_word(n: usize, w: &[usize]) -> Vec<usize> {
        // s_{w_1} ⋯ s_{w_r} in one-line notation: rightmost factor first on positions.
        let mut p: Vec<usize> = (0..n).collect();
        for &i in w {
            p.swap(i - 1, i);
        }
        p
    }

    #[test]
    fn reduced_words_of_small_permutations() {
        assert_eq!(matsumoto(&[0, 1, 2]), BraidWord(vec![]));
        assert_eq!(matsumoto(&[0, 2, 1]), BraidWord(vec![2]));
        let top = reduced_words(&[2, 1, 0]);
        assert_eq!(top, BTreeSet::from([vec![1, 2, 1], vec![2, 1, 2]]));
        assert_eq!(reduced_words(&[3, 2, 1, 0]).len(), 16);
        for p in permutations(4) {
            for w in reduced_words(&p) {
                assert_eq!(apply_word(4, &w), p);
            }
            assert!(reduced_words(&p).contains(&canonical_reduced_word(&p)));
        }
    }

    #[test]
    fn inverse_generators_cancel() {
        let v = BraidedSpace::diagonal(3, vec!["a".into(), "b".into()], vec![vec![1, 2], vec![0, 1]]).unwrap();
        let w = BraidWord(vec![2, -2, 1, -1]);
        assert_eq!(w.operator(&v, 3), MonomialOp::identity(3, 8));
        assert!(matsumoto_invariance_witness(&v, 4).is_none());
    }
}
