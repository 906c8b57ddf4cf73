//! The literal symmetrizer `Σ_{σ ∈ S_n} ρ(M(σ))`, as an independent check on
//! the factorized assembly.

use super::braid::{matsumoto, permutations};
use super::image::lambda_left;
use super::{BraidedSpace, Symmetrizer};

/// Dense `D × D` matrix with group-ring entries, `k` coefficients each,
/// stored row-major as `[(row * D + col) * k + e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    pub size: usize,
    pub k: usize,
    pub data: Vec<i64>,
}

impl GroupRingMatrix {
    fn zeros(size: usize, k: usize) -> Self {
        GroupRingMatrix { size, k, data: vec![0; size * size * k] }
    }

    pub fn entry(&self, row: usize, col: usize) -> &[i64] {
        let s = (row * self.size + col) * self.k;
        &self.data[s..s + self.k]
    }
}

/// `Σ_{σ ∈ S_n} ρ(M(σ))` summed term by term, `n!` operators.
pub fn literal_symmetrizer(v: &BraidedSpace, n: usize) -> GroupRingMatrix {
    let size = v.dim().pow(n as u32);
    let k = v.modulus() as usize;
    let mut m = GroupRingMatrix::zeros(size, k);
    for p in permutations(n) {
        let op = matsumoto(&p).operator(v, n);
        for col in 0..size {
            let (row, e) = op.image(col);
            m.data[(row * size + col) * k + e as usize] += 1;
        }
    }
    m
}

/// `Ω_n` from the coset factorization, densified.
pub fn factorized_symmetrizer(v: &BraidedSpace, n: usize) -> GroupRingMatrix {
    let mut s = Symmetrizer::new(v);
    for _ in 0..n {
        s.advance();
    }
    let size = v.dim().pow(n as u32);
    let k = v.modulus() as usize;
    let mut m = GroupRingMatrix::zeros(size, k);
    for (col, c) in s.columns().iter().enumerate() {
        for (row, coef) in c.entries(k) {
            let base = (row * size + col) * k;
            m.data[base..base + k].copy_from_slice(coef);
        }
    }
    m
}

/// `Ω_n = Λ'_n (Ω_{n-1} ⊗ id)`, the factorization used for ranks, densified.
pub fn left_factorized_symmetrizer(v: &BraidedSpace, n: usize) -> GroupRingMatrix {
    let size = v.dim().pow(n as u32);
    let k = v.modulus() as usize;
    let d = v.dim();
    let mut m = GroupRingMatrix::zeros(size, k);
    if n == 0 {
        m.data[0] = 1;
        return m;
    }
    let mut s = Symmetrizer::new(v);
    for _ in 1..n {
        s.advance();
    }
    let mut targets = Vec::new();
    for col in 0..size {
        let (prefix, last) = (col / d, col % d);
        for (row, coef) in s.columns()[prefix].entries(k) {
            lambda_left(v, n, row * d + last, &mut targets);
            for &(t, e) in &targets {
                let base = (t * size + col) * k;
                for (s2, &c) in coef.iter().enumerate() {
                    m.data[base + (s2 + e as usize) % k] += c;
                }
            }
        }
    }
    m
}

/// First `(row, col)` where the literal sum differs from either
/// factorization, for `n ≤ 4`.
pub fn oracle_mismatch(v: &BraidedSpace, n: usize) -> Option<(usize, usize)> {
    assert!(n <= 4, "the literal sum is only run for n ≤ 4");
    let a = literal_symmetrizer(v, n);
    let (b, c) = (factorized_symmetrizer(v, n), left_factorized_symmetrizer(v, n));
    (0..a.size)
        .flat_map(|r| (0..a.size).map(move |col| (r, col)))
        .find(|&(r, col)| a.entry(r, col) != b.entry(r, col) || a.entry(r, col) != c.entry(r, col))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagonal_space() {
        let v = BraidedSpace::diagonal(4, vec!["a".into(), "b".into()], vec![vec![2, 1], vec![3, 2]]).unwrap();
        for n in 0..=4 {
            assert_eq!(oracle_mismatch(&v, n), None, "n = {n}");
        }
        // Each column receives exactly 3! contributions.
        let m = literal_symmetrizer(&v, 3);
        for c in 0..8 {
            let total: i64 = (0..8).map(|r| m.entry(r, c).iter().sum::<i64>()).sum();
            assert_eq!(total, 6);
        }
    }

    #[test]
    fn non_diagonal_space() {
        // The 3-element rack of transpositions with constant cocycle -1.
        let act = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        let v = BraidedSpace::new(2, vec!["a".into(), "b".into(), "c".into()], act, vec![vec![1; 3]; 3]).unwrap();
        for n in 0..=4 {
            assert_eq!(oracle_mismatch(&v, n), None, "n = {n}");
        }
    }
}
