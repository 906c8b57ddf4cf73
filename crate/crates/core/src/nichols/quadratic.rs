use rayon::prelude::*;
use serde::Serialize;

use super::linalg;
use super::{BraidedSpace, Field, Mode, NicholsError, Symmetrizer};

/// Comparison of `ker Ω_n` with the degree-`n` part of the ideal generated
/// by `ker Ω_2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticReport {
    pub degree: usize,
    pub kernel_dim: u64,
    pub ideal_dim: u64,
    pub quadratic: bool,
}

/// Basis of `ker Ω_2 ⊂ V ⊗ V` as dense vectors of length `d²`.
pub fn quadratic_relations<F: Field>(v: &BraidedSpace, f: &F) -> Vec<Vec<F::Elem>> {
    let mut s = Symmetrizer::new(v);
    s.advance();
    s.advance();
    let size = v.dim() * v.dim();
    let mut out = Vec::new();
    for block in s.blocks() {
        // block_rows gives Ω_2ᵀ on the block; kernel vectors of Ω_2 are the
        // null vectors of its rows-as-columns, so transpose back.
        let t = s.block_rows(f, &block);
        let rows: Vec<Vec<F::Elem>> = (0..block.len()).map(|r| t.iter().map(|col| col[r].clone()).collect()).collect();
        for x in linalg::nullspace(f, rows, block.len()) {
            let mut full = vec![f.zero(); size];
            for (pos, &b) in block.iter().enumerate() {
                full[b as usize] = x[pos].clone();
            }
            out.push(full);
        }
    }
    out
}

/// Reports for degrees `3..=n`; quadratic through `n` iff all are equal.
pub fn quadratic_reports<F: Field>(v: &BraidedSpace, n: usize, f: &F, mode: Mode) -> Result<Vec<QuadraticReport>, NicholsError> {
    let d = v.dim();
    let kernel: Vec<Vec<(usize, F::Elem)>> = quadratic_relations(v, f)
        .into_iter()
        .map(|x| x.into_iter().enumerate().filter(|(_, e)| !f.is_zero(e)).collect())
        .collect();
    let mut s = Symmetrizer::new(v);
    s.advance();
    s.advance();
    let mut out = Vec::new();
    for m in 3..=n {
        let ambient = (d as u64).pow(m as u32);
        if ambient > mode.budget() {
            return Err(NicholsError::DegreeTooLarge { degree: m, dim: ambient, budget: mode.budget() });
        }
        s.advance();
        let blocks = s.blocks();
        let mut block_of = vec![0u32; ambient as usize];
        for (b, block) in blocks.iter().enumerate() {
            for &w in block {
                block_of[w as usize] = b as u32;
            }
        }
        // e_u ⊗ κ ⊗ e_w lies in a single orbit, since κ lies in one orbit of V ⊗ V.
        let mut gens: Vec<Vec<Vec<(usize, F::Elem)>>> = vec![Vec::new(); blocks.len()];
        for i in 0..=m - 2 {
            let tail = d.pow((m - 2 - i) as u32);
            for u in 0..d.pow(i as u32) {
                for kappa in &kernel {
                    for w in 0..tail {
                        let vec: Vec<(usize, F::Elem)> =
                            kappa.iter().map(|(s2, e)| ((u * d * d + s2) * tail + w, e.clone())).collect();
                        gens[block_of[vec[0].0] as usize].push(vec);
                    }
                }
            }
        }
        let (kernel_dim, ideal_dim) = blocks
            .par_iter()
            .zip(gens.par_iter())
            .map(|(block, g)| {
                let nullity = block.len() - linalg::rank(f, s.block_rows(f, block));
                let rows: Vec<Vec<F::Elem>> = g
                    .iter()
                    .map(|sparse| {
                        let mut row = vec![f.zero(); block.len()];
                        for (idx, e) in sparse {
                            row[block.binary_search(&(*idx as u32)).expect("same orbit")] = e.clone();
                        }
                        row
                    })
                    .collect();
                (nullity as u64, linalg::rank(f, rows) as u64)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        assert!(ideal_dim <= kernel_dim, "the quadratic ideal lies in ker Ω_{m}");
        out.push(QuadraticReport { degree: m, kernel_dim, ideal_dim, quadratic: kernel_dim == ideal_dim });
    }
    Ok(out)
}

/// Whether the relations in degrees `3..=n` all follow from degree 2.
pub fn is_quadratic_through<F: Field>(v: &BraidedSpace, n: usize, f: &F, mode: Mode) -> Result<bool, NicholsError> {
    Ok(quadratic_reports(v, n, f, mode)?.iter().all(|r| r.quadratic))
}
