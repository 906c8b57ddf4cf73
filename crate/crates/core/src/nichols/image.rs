//! Ranks of `Ω_n` from `Im Ω_n = Λ'_n (Im Ω_{n-1} ⊗ V)`, where
//! `Λ'_n = Σ_{j=0}^{n-1} ρ(σ_{j+1} ⋯ σ_{n-1})` sums over the minimal left
//! coset representatives of `S_{n-1}` in `S_n`.
//!
//! Only a basis of the image is kept, split along braid group orbits: both
//! `Λ'_n` and `Ω_{n-1} ⊗ id` preserve the span of each orbit.

use rayon::prelude::*;

use super::linalg;
use super::{BraidedSpace, Field};

/// Orbits of the braid group on basis tensors of `V^{⊗n}`, each sorted and
/// ordered by smallest element, with the orbit index of every tensor.
pub fn orbits(v: &BraidedSpace, n: usize) -> (Vec<Vec<u32>>, Vec<u32>) {
    let d = v.dim();
    let size = d.pow(n as u32);
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut a: u32) -> u32 {
        while parent[a as usize] != a {
            parent[a as usize] = parent[parent[a as usize] as usize];
            a = parent[a as usize];
        }
        a
    }
    for i in 1..n {
        let hi = d.pow((n - i) as u32);
        let lo = hi / d;
        for w in 0..size {
            let (x, y) = ((w / hi) % d, (w / lo) % d);
            let ((a, b), _) = v.apply(x, y);
            let t = w - x * hi - y * lo + a * hi + b * lo;
            let (ra, rb) = (find(&mut parent, w as u32), find(&mut parent, t as u32));
            if ra != rb {
                parent[ra.max(rb) as usize] = ra.min(rb);
            }
        }
    }
    let mut orbit_of = vec![u32::MAX; size];
    let mut slot = vec![u32::MAX; size];
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for w in 0..size as u32 {
        let r = find(&mut parent, w) as usize;
        if slot[r] == u32::MAX {
            slot[r] = blocks.len() as u32;
            blocks.push(Vec::new());
        }
        orbit_of[w as usize] = slot[r];
        blocks[slot[r] as usize].push(w);
    }
    (blocks, orbit_of)
}

/// `Λ'_n e_w` as `(target, exponent)` pairs.
pub(super) fn lambda_left(v: &BraidedSpace, n: usize, w: usize, out: &mut Vec<(usize, u32)>) {
    let d = v.dim();
    let k = v.modulus();
    let mut digits = vec![0usize; n];
    let mut t = w;
    for p in (0..n).rev() {
        digits[p] = t % d;
        t /= d;
    }
    out.clear();
    for j in 0..n {
        // σ_{n-1} acts first.
        let mut x = digits.clone();
        let mut e = 0u32;
        for p in (j..n - 1).rev() {
            let ((a, b), f) = v.apply(x[p], x[p + 1]);
            x[p] = a;
            x[p + 1] = b;
            e += f;
        }
        out.push((x.iter().fold(0, |s, &y| s * d + y), e % k));
    }
}

/// Basis of `Im Ω_n` over `F`, degree by degree.
pub struct ImageChain<'a, F: Field> {
    space: &'a BraidedSpace,
    field: &'a F,
    degree: usize,
    blocks: Vec<Vec<u32>>,
    /// Row-reduced basis of the image inside each orbit, in local coordinates.
    bases: Vec<Vec<Vec<F::Elem>>>,
}

impl<'a, F: Field> ImageChain<'a, F> {
    pub fn new(space: &'a BraidedSpace, field: &'a F) -> Self {
        assert_eq!(field.root_order() % space.modulus(), 0, "field lacks the needed roots of unity");
        ImageChain { space, field, degree: 0, blocks: vec![vec![0]], bases: vec![vec![vec![field.one()]]] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> u64 {
        self.bases.iter().map(|b| b.len() as u64).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Moves to degree `n + 1` and returns the new rank.
    pub fn advance(&mut self) -> u64 {
        let v = self.space;
        let f = self.field;
        let d = v.dim();
        let n = self.degree + 1;
        let scale = f.root_order() / v.modulus();
        let (blocks, orbit_of) = orbits(v, n);
        let mut inputs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); blocks.len()];
        for (o, block) in self.blocks.iter().enumerate() {
            if self.bases[o].is_empty() {
                continue;
            }
            for x in 0..d {
                inputs[orbit_of[block[0] as usize * d + x] as usize].push((o, x));
            }
        }
        let prev_blocks = &self.blocks;
        let prev_bases = &self.bases;
        let bases: Vec<Vec<Vec<F::Elem>>> = blocks
            .par_iter()
            .zip(inputs.par_iter())
            .map(|(block, ins)| {
                let mut rows = Vec::new();
                let mut targets = Vec::new();
                for &(o, x) in ins {
                    for b in &prev_bases[o] {
                        let mut row = vec![f.zero(); block.len()];
                        for (pos, c) in b.iter().enumerate() {
                            if f.is_zero(c) {
                                continue;
                            }
                            let w = prev_blocks[o][pos] as usize * d + x;
                            lambda_left(v, n, w, &mut targets);
                            for &(t, e) in &targets {
                                let local = block.binary_search(&(t as u32)).expect("Λ' preserves orbits");
                                row[local] = f.add(&row[local], &f.mul(c, &f.zeta_pow(e * scale)));
                            }
                        }
                        rows.push(row);
                    }
                }
                let r = linalg::row_reduce(f, &mut rows).len();
                rows.truncate(r);
                rows
            })
            .collect();
        self.blocks = blocks;
        self.bases = bases;
        self.degree = n;
        self.rank()
    }
}
