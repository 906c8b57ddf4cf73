use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::image::{orbits, ImageChain};
use super::linalg;
use super::{select_primes, BraidedSpace, CyclotomicField, Field, NicholsError, PrimeField};

/// Largest `d^n` handled in modular mode.
pub const MODULAR_BUDGET: u64 = 1 << 20;
/// Largest `d^n` handled in exact mode.
pub const EXACT_BUDGET: u64 = 20_000;

/// Arithmetic used for ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Ranks over `GF(p)` for this many primes `p ≡ 1 (mod k)`; they must agree.
    Modular { primes: usize },
    /// Ranks over `Q(ζ_k)`.
    Exact,
}

impl Mode {
    pub fn budget(&self) -> u64 {
        match self {
            Mode::Modular { .. } => MODULAR_BUDGET,
            Mode::Exact => EXACT_BUDGET,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Modular { .. } => "modular",
            Mode::Exact => "exact",
        }
    }
}

/// Rank of `Ω_n` in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrizerReport {
    pub schema_version: String,
    pub degree: usize,
    pub ambient_dim: u64,
    pub rank: u64,
    pub nullity: u64,
    pub mode: String,
    pub primes: Vec<u64>,
    pub agreed: bool,
    /// Rank forced to 0 by a vanishing lower degree, not computed.
    pub implied: bool,
    pub blocks: usize,
    pub wall_time_ms: u64,
}

/// Sparse column of `Ω_n` with coefficients in the group ring `Z[C_k]`:
/// entry `t` of row `idx[t]` is `Σ_e coef[t k + e] ζ^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingColumn {
    idx: Vec<u32>,
    coef: Vec<i64>,
}

impl GroupRingColumn {
    pub fn entries(&self, k: usize) -> impl Iterator<Item = (usize, &[i64])> {
        self.idx.iter().map(|&i| i as usize).zip(self.coef.chunks(k))
    }

    pub fn nnz(&self) -> usize {
        self.idx.len()
    }
}

/// Columns of `Ω_n` degree by degree, via
/// `Ω_n = (Ω_{n-1} ⊗ id) Σ_{j=0}^{n-1} ρ(σ_{n-1} ⋯ σ_{j+1})`.
///
/// The basis tensors split into orbits of the braid group action; `Ω_n`
/// preserves the span of each orbit, so ranks are taken block by block.
pub struct Symmetrizer<'a> {
    space: &'a BraidedSpace,
    degree: usize,
    columns: Vec<GroupRingColumn>,
}

impl<'a> Symmetrizer<'a> {
    /// Degree 0: `Ω_0 = 1` on the one-dimensional `V^{⊗0}`.
    pub fn new(space: &'a BraidedSpace) -> Self {
        let k = space.modulus() as usize;
        let mut coef = vec![0; k];
        coef[0] = 1;
        Symmetrizer { space, degree: 0, columns: vec![GroupRingColumn { idx: vec![0], coef }] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn columns(&self) -> &[GroupRingColumn] {
        &self.columns
    }

    pub fn ambient_dim(&self) -> u64 {
        (self.space.dim() as u64).pow(self.degree as u32)
    }

    /// Moves to the next degree, keeping only the new columns.
    pub fn advance(&mut self) {
        let v = self.space;
        let d = v.dim();
        let k = v.modulus() as usize;
        let n = self.degree + 1;
        let size = d.pow(n as u32);
        let prev = &self.columns;
        let columns: Vec<GroupRingColumn> = (0..size)
            .into_par_iter()
            .map(|w| {
                let mut digits = vec![0usize; n];
                let mut t = w;
                for p in (0..n).rev() {
                    digits[p] = t % d;
                    t /= d;
                }
                let mut acc: Vec<(u32, usize, u32)> = Vec::new();
                for j in 0..n {
                    // ρ(σ_{n-1} ⋯ σ_{j+1}) e_w: σ_{j+1} acts first.
                    let mut x = digits.clone();
                    let mut e = 0u32;
                    for p in j..n - 1 {
                        let ((a, b), f) = v.apply(x[p], x[p + 1]);
                        x[p] = a;
                        x[p + 1] = b;
                        e += f;
                    }
                    let prefix = x[..n - 1].iter().fold(0usize, |s, &y| s * d + y);
                    acc.push((prefix as u32, x[n - 1], e % k as u32));
                }
                let mut entries: Vec<(u32, Vec<i64>)> = Vec::new();
                for (prefix, last, e) in acc {
                    for (row, c) in prev[prefix as usize].entries(k) {
                        let mut rot = vec![0i64; k];
                        for (s, &val) in c.iter().enumerate() {
                            rot[(s + e as usize) % k] += val;
                        }
                        entries.push(((row * d + last) as u32, rot));
                    }
                }
                entries.sort_unstable_by_key(|(r, _)| *r);
                let mut idx = Vec::new();
                let mut coef: Vec<i64> = Vec::new();
                for (r, c) in entries {
                    if idx.last() == Some(&r) {
                        let base = coef.len() - k;
                        for (s, val) in c.into_iter().enumerate() {
                            coef[base + s] += val;
                        }
                    } else {
                        idx.push(r);
                        coef.extend(c);
                    }
                }
                // Drop entries that vanish in the group ring.
                let mut out = GroupRingColumn { idx: Vec::with_capacity(idx.len()), coef: Vec::with_capacity(coef.len()) };
                for (t, &r) in idx.iter().enumerate() {
                    let c = &coef[t * k..(t + 1) * k];
                    if c.iter().any(|&x| x != 0) {
                        out.idx.push(r);
                        out.coef.extend_from_slice(c);
                    }
                }
                out
            })
            .collect();
        self.columns = columns;
        self.degree = n;
    }

    /// Orbits of the braid group on basis tensors, see [`orbits`].
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        orbits(self.space, self.degree).0
    }

    /// The block of `Ω_n` on one orbit as rows over `f`, one row per column
    /// of `Ω_n` (a transpose, which has the same rank).
    pub fn block_rows<F: Field>(&self, f: &F, block: &[u32]) -> Vec<Vec<F::Elem>> {
        let k = self.space.modulus() as usize;
        block
            .iter()
            .map(|&c| {
                let mut row = vec![f.zero(); block.len()];
                for (r, coef) in self.columns[c as usize].entries(k) {
                    let pos = block.binary_search(&(r as u32)).expect("Ω_n preserves orbits");
                    row[pos] = f.from_group_ring(coef);
                }
                row
            })
            .collect()
    }

    /// `rank Ω_n` over `f`, summed over blocks.
    pub fn rank<F: Field>(&self, f: &F, blocks: &[Vec<u32>]) -> u64 {
        blocks.par_iter().map(|b| linalg::rank(f, self.block_rows(f, b)) as u64).sum()
    }

    /// Writes `Ω_n` as `row col exponent multiplicity` lines, meaning the
    /// entry at (row, col) gains `multiplicity · ζ^exponent`.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> io::Result<()> {
        let k = self.space.modulus() as usize;
        writeln!(out, "# omega degree={} dim={} k={}", self.degree, self.ambient_dim(), k)?;
        for (c, col) in self.columns.iter().enumerate() {
            for (r, coef) in col.entries(k) {
                for (e, &m) in coef.iter().enumerate() {
                    if m != 0 {
                        writeln!(out, "{r} {c} {e} {m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reports for degrees `0..=dmax`. Once a degree has rank 0 every later
/// degree does too, and those reports are marked `implied`.
pub fn hilbert_reports(space: &BraidedSpace, dmax: usize, mode: Mode) -> Result<Vec<SymmetrizerReport>, NicholsError> {
    let k = space.modulus();
    let primes = match mode {
        Mode::Modular { primes } if primes < 2 => {
            return Err(NicholsError::Shape("modular mode needs at least two primes".into()));
        }
        Mode::Modular { primes } => select_primes(k, primes)?,
        Mode::Exact => Vec::new(),
    };
    let prime_fields = primes.iter().map(|&p| PrimeField::new(p, k)).collect::<Result<Vec<_>, _>>()?;
    let exact = CyclotomicField::new(k);
    let mut modular: Vec<ImageChain<PrimeField>> = prime_fields.iter().map(|f| ImageChain::new(space, f)).collect();
    let mut rational = ImageChain::new(space, &exact);
    let mut reports = Vec::new();
    let mut vanished = false;
    for n in 0..=dmax {
        let ambient = (space.dim() as u64).pow(n as u32);
        let start = Instant::now();
        let mut report = SymmetrizerReport {
            schema_version: "symmetrizer_report.v1".into(),
            degree: n,
            ambient_dim: ambient,
            rank: 0,
            nullity: ambient,
            mode: mode.name().into(),
            primes: primes.clone(),
            agreed: true,
            implied: vanished,
            blocks: 0,
            wall_time_ms: 0,
        };
        if !vanished {
            if ambient > mode.budget() {
                return Err(NicholsError::DegreeTooLarge { degree: n, dim: ambient, budget: mode.budget() });
            }
            let (rank, blocks) = match mode {
                Mode::Modular { .. } => {
                    let ranks: Vec<u64> =
                        modular.par_iter_mut().map(|c| if n == 0 { c.rank() } else { c.advance() }).collect();
                    if ranks.iter().any(|&r| r != ranks[0]) {
                        return Err(NicholsError::PrimesDisagree { degree: n, ranks });
                    }
                    (ranks[0], modular[0].num_blocks())
                }
                Mode::Exact => (if n == 0 { rational.rank() } else { rational.advance() }, rational.num_blocks()),
            };
            match n {
                0 => assert_eq!(rank, 1, "Ω_0 has rank 1"),
                1 => assert_eq!(rank, space.dim() as u64, "Ω_1 is the identity"),
                _ => {}
            }
            vanished = rank == 0;
            report.rank = rank;
            report.nullity = ambient - rank;
            report.blocks = blocks;
            report.wall_time_ms = start.elapsed().as_millis() as u64;
        }
        reports.push(report);
    }
    Ok(reports)
}

/// Report for degree `n` alone.
pub fn symmetrizer_rank(space: &BraidedSpace, n: usize, mode: Mode) -> Result<SymmetrizerReport, NicholsError> {
    Ok(hilbert_reports(space, n, mode)?.pop().expect("at least degree 0"))
}

/// `dim B^n(V)` for `n = 0..=dmax`.
pub fn hilbert_coeffs(space: &BraidedSpace, dmax: usize, mode: Mode) -> Result<Vec<u64>, NicholsError> {
    Ok(hilbert_reports(space, dmax, mode)?.into_iter().map(|r| r.rank).collect())
}

/// Degreewise equality of Hilbert coefficients through `dmax`.
pub fn hilbert_equal(a: &BraidedSpace, b: &BraidedSpace, dmax: usize, mode: Mode) -> Result<bool, NicholsError> {
    if a.dim() != b.dim() {
        return Err(NicholsError::Shape(format!("dimensions {} and {} differ", a.dim(), b.dim())));
    }
    Ok(hilbert_coeffs(a, dmax, mode)? == hilbert_coeffs(b, dmax, mode)?)
}
