//! Linear systems over GF(2) with bit-packed rows.

/// Dense system `A x = b` over GF(2).
#[derive(Debug, Clone)]
pub struct Gf2System {
    nvars: usize,
    words: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    pub fn new(nvars: usize) -> Self {
        Gf2System { nvars, words: nvars.div_ceil(64).max(1), rows: Vec::new() }
    }

    /// Adds the equation `Σ_{v ∈ vars} x_v = rhs`; repeated variables cancel.
    pub fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words];
        for &v in vars {
            assert!(v < self.nvars, "variable {v} out of range");
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((row, rhs));
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    /// Some solution, with free variables set to zero, or `None` if the
    /// system is inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..self.nvars {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (r..rows.len()).find(|&i| rows[i].0[w] & bit != 0) else { continue };
            rows.swap(r, p);
            let (pivot_row, pivot_rhs) = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.0[w] & bit != 0 {
                    for (a, b) in row.0.iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                    row.1 ^= pivot_rhs;
                }
            }
            pivots.push((r, col));
            r += 1;
        }
        if rows[r..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut x = vec![false; self.nvars];
        for (row, col) in pivots {
            x[col] = rows[row].1;
        }
        Some(x)
    }
}
