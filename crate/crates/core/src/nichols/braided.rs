use super::NicholsError;
use crate::coxeter::GroupTable;
use crate::extension::word_label;
use crate::racks::{rack_from_class, Rack, RackCocycle, SignCocycles, Which};

/// Braided vector space with a monomial braiding
/// `c(e_x ⊗ e_y) = ζ^{q(x, y)} e_{x ▷ y} ⊗ e_x`, `ζ` a primitive `k`-th root
/// of unity. Each row `y ↦ x ▷ y` is a permutation of the basis, so `c` is
/// invertible; the braid equation is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedSpace {
    k: u32,
    labels: Vec<String>,
    act: Vec<Vec<u32>>,
    q: Vec<Vec<u32>>,
}

impl BraidedSpace {
    pub fn new(k: u32, labels: Vec<String>, act: Vec<Vec<usize>>, q: Vec<Vec<u32>>) -> Result<Self, NicholsError> {
        let d = labels.len();
        if k == 0 || act.len() != d || q.len() != d || act.iter().any(|r| r.len() != d) || q.iter().any(|r| r.len() != d) {
            return Err(NicholsError::Shape(format!("expected {d}×{d} tables with k ≥ 1")));
        }
        for (x, row) in act.iter().enumerate() {
            let mut seen = vec![false; d];
            for &t in row {
                if t >= d || std::mem::replace(&mut seen[t], true) {
                    return Err(NicholsError::NotInvertible(format!("y ↦ {} ▷ y is not a permutation", labels[x])));
                }
            }
        }
        let space = BraidedSpace {
            k,
            labels,
            act: act.into_iter().map(|r| r.into_iter().map(|t| t as u32).collect()).collect(),
            q: q.into_iter().map(|r| r.into_iter().map(|v| v % k).collect()).collect(),
        };
        if let Some((x, y, z)) = space.braid_equation_witness() {
            return Err(NicholsError::BraidEquationFailed { x, y, z });
        }
        Ok(space)
    }

    /// Diagonal braiding `c(e_x ⊗ e_y) = ζ^{q(x, y)} e_y ⊗ e_x`.
    pub fn diagonal(k: u32, labels: Vec<String>, q: Vec<Vec<u32>>) -> Result<Self, NicholsError> {
        let d = labels.len();
        let act = (0..d).map(|_| (0..d).collect()).collect();
        BraidedSpace::new(k, labels, act, q)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Order `k` of the root of unity the exponents refer to.
    pub fn modulus(&self) -> u32 {
        self.k
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn act(&self, x: usize, y: usize) -> usize {
        self.act[x][y] as usize
    }

    pub fn q(&self, x: usize, y: usize) -> u32 {
        self.q[x][y]
    }

    pub fn is_diagonal(&self) -> bool {
        self.act.iter().all(|r| r.iter().enumerate().all(|(y, &t)| t as usize == y))
    }

    /// `c(e_x ⊗ e_y)` as `((first, second), exponent)`.
    pub fn apply(&self, x: usize, y: usize) -> ((usize, usize), u32) {
        ((self.act(x, y), x), self.q[x][y])
    }

    /// `c⁻¹(e_a ⊗ e_b) = ζ^{-q(b, y)} e_b ⊗ e_y` with `b ▷ y = a`.
    pub fn apply_inverse(&self, a: usize, b: usize) -> ((usize, usize), u32) {
        let y = self.act[b].iter().position(|&t| t as usize == a).expect("rows are permutations");
        ((b, y), (self.k - self.q[b][y]) % self.k)
    }

    /// `c²(e_x ⊗ e_y) = e_x ⊗ e_y`.
    pub fn c_squared_fixes(&self, x: usize, y: usize) -> bool {
        let ((a, b), e1) = self.apply(x, y);
        let ((u, v), e2) = self.apply(a, b);
        (u, v) == (x, y) && (e1 + e2) % self.k == 0
    }

    /// First basis triple on which `(c⊗1)(1⊗c)(c⊗1) ≠ (1⊗c)(c⊗1)(1⊗c)`.
    pub fn braid_equation_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let k = self.k;
        let c12 = |t: [usize; 3], e: u32| {
            let ((a, b), f) = self.apply(t[0], t[1]);
            ([a, b, t[2]], (e + f) % k)
        };
        let c23 = |t: [usize; 3], e: u32| {
            let ((a, b), f) = self.apply(t[1], t[2]);
            ([t[0], a, b], (e + f) % k)
        };
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let t = [x, y, z];
                    let (l, le) = c12(t, 0);
                    let (l, le) = c23(l, le);
                    let lhs = c12(l, le);
                    let (r, re) = c23(t, 0);
                    let (r, re) = c12(r, re);
                    let rhs = c23(r, re);
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// The same braiding with exponents read modulo a multiple of `k`.
    pub fn with_modulus(&self, k: u32) -> Self {
        assert!(k.is_multiple_of(self.k), "{k} is not a multiple of {}", self.k);
        let f = k / self.k;
        BraidedSpace {
            k,
            labels: self.labels.clone(),
            act: self.act.clone(),
            q: self.q.iter().map(|r| r.iter().map(|v| v * f).collect()).collect(),
        }
    }

    /// Braided subspace spanned by `indices`, which must be stable under `▷`.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self, NicholsError> {
        let pos = |t: usize| indices.iter().position(|&i| i == t);
        let mut act = Vec::new();
        for &x in indices {
            let mut row = Vec::new();
            for &y in indices {
                row.push(pos(self.act(x, y)).ok_or_else(|| {
                    NicholsError::Shape(format!("{} ▷ {} leaves the subspace", self.labels[x], self.labels[y]))
                })?);
            }
            act.push(row);
        }
        let q = indices.iter().map(|&x| indices.iter().map(|&y| self.q[x][y]).collect()).collect();
        BraidedSpace::new(self.k, indices.iter().map(|&i| self.labels[i].clone()).collect(), act, q)
    }
}

/// `(X, q) ↦ (kX, c_q)`.
pub fn braiding_from_rack(rack: &Rack, q: &RackCocycle, labels: Vec<String>) -> Result<BraidedSpace, NicholsError> {
    if q.len() != rack.len() || labels.len() != rack.len() {
        return Err(NicholsError::Shape("rack, cocycle and labels differ in size".into()));
    }
    BraidedSpace::new(q.modulus(), labels, rack.table().to_vec(), q.values().to_vec())
}

/// `(T', q^±|_{T'})` for the reflections with the given indices, labelled by
/// their canonical words.
pub fn sign_braiding(g: &GroupTable, which: Which, indices: &[usize]) -> Result<BraidedSpace, NicholsError> {
    let rack = rack_from_class(g, indices).map_err(|e| NicholsError::Shape(e.to_string()))?;
    let q = SignCocycles::new(g).on_reflections(g, which).restrict(indices);
    let labels = indices.iter().map(|&k| word_label(g.word(g.reflection(k)))).collect();
    braiding_from_rack(&rack, &q, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use crate::racks::{q_minus, q_plus, reflection_rack};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn one_point_rack() {
        let v = BraidedSpace::new(2, names(1), vec![vec![0]], vec![vec![1]]).unwrap();
        assert_eq!(v.apply(0, 0), ((0, 0), 1));
        assert!(v.c_squared_fixes(0, 0));
    }

    #[test]
    fn a2_reflection_braidings() {
        let g = GroupTable::build(&CoxeterMatrix::preset("A2").unwrap()).unwrap();
        let rack = reflection_rack(&g);
        let plus = braiding_from_rack(&rack, &q_plus(&g), names(3)).unwrap();
        let minus = braiding_from_rack(&rack, &q_minus(&g), names(3)).unwrap();
        assert_eq!(plus.dim(), 3);
        assert!((0..3).any(|x| (0..3).any(|y| !minus.c_squared_fixes(x, y))));
        for x in 0..3 {
            for y in 0..3 {
                let ((a, b), e) = minus.apply(x, y);
                assert_eq!(minus.apply_inverse(a, b), ((x, y), (2 - e) % 2));
            }
        }
    }

    #[test]
    fn braid_equation_failure_is_reported() {
        // Perturbing one exponent of q⁺ on T(A₂) breaks the cocycle identity.
        let g = GroupTable::build(&CoxeterMatrix::preset("A2").unwrap()).unwrap();
        let rack = reflection_rack(&g);
        let mut q = q_plus(&g);
        q.set(0, 1, q.get(0, 1) + 1);
        assert!(matches!(braiding_from_rack(&rack, &q, names(3)), Err(NicholsError::BraidEquationFailed { .. })));
    }

    #[test]
    fn non_permutation_rows_are_rejected() {
        let r = BraidedSpace::new(2, names(2), vec![vec![0, 0], vec![0, 1]], vec![vec![0; 2]; 2]);
        assert!(matches!(r, Err(NicholsError::NotInvertible(_))));
    }
}
