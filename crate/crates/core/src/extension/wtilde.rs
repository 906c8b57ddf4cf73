use super::todd_coxeter::{self, gen, inv, EnumerationError};
use super::ExtensionError;
use crate::coxeter::{CoxeterMatrix, GroupTable};
use crate::gf2::Gf2System;

const DENSE_LIMIT: usize = 4096;

/// Relators of `W̃` on `t_0 … t_{l-1}, z` as letter sequences:
/// `z²`, `(t_i z)²`, and `(t_i t_j)^{m_ij} z^{-(m_ij+1)}` for `i ≤ j`.
pub fn wtilde_relators(matrix: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let l = matrix.rank();
    let z = l;
    let mut rels = vec![vec![gen(z), gen(z)]];
    for i in 0..l {
        rels.push(vec![gen(i), gen(z), gen(i), gen(z)]);
    }
    for i in 0..l {
        for j in i..l {
            let m = matrix.get(i, j) as usize;
            let mut r: Vec<usize> = [gen(i), gen(j)].iter().copied().cycle().take(2 * m).collect();
            r.extend(std::iter::repeat_n(inv(z), m + 1));
            rels.push(r);
        }
    }
    rels
}

/// The central extension `W̃` in its regular representation.
///
/// Element 0 is the identity; each element is a coset of the trivial
/// subgroup, reached from 0 by a breadth-first word in `t_i` and `z`.
#[derive(Debug, Clone)]
pub struct ExtGroup {
    rank: usize,
    /// `right[a * (l+1) + g]` is `a · x_g` with `x_l = z`.
    right: Vec<u32>,
    parent: Vec<(u32, u8)>,
    proj: Vec<u32>,
    inv: Vec<u32>,
    z: usize,
    mult: Option<Vec<u32>>,
}

impl ExtGroup {
    /// Enumerates `W̃` and checks the projection to `W`, the order `2|W|`,
    /// centrality of `z` and the kernel `{1, z}`.
    pub fn build(g: &GroupTable) -> Result<Self, ExtensionError> {
        let matrix = g.matrix();
        let l = matrix.rank();
        let cap = 4 * g.order() + 16;
        let table = todd_coxeter::enumerate(l + 1, &wtilde_relators(matrix), cap)
            .map_err(|EnumerationError::Overflow { cap }| ExtensionError::EnumerationOverflow { cap })?;
        let n = table.num_cosets();
        let ng = l + 1;
        let mut right = vec![0u32; n * ng];
        for a in 0..n {
            for x in 0..ng {
                right[a * ng + x] = table.act(a, gen(x)) as u32;
            }
        }
        // Breadth-first parents: element a = parent · x.
        let mut parent = vec![(u32::MAX, 0u8); n];
        let mut order = vec![0usize];
        parent[0] = (0, 0);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let a = order[i];
            for x in 0..ng {
                let b = right[a * ng + x] as usize;
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = (a as u32, x as u8);
                    order.push(b);
                }
            }
            i += 1;
        }

        // π_W: t_i ↦ s_i, z ↦ 1, checked on every edge of the table.
        let mut proj = vec![u32::MAX; n];
        proj[0] = 0;
        for &b in &order[1..] {
            let (a, x) = parent[b];
            let pa = proj[a as usize] as usize;
            proj[b] = if (x as usize) < l { g.right_mul(pa, x as usize) as u32 } else { pa as u32 };
        }
        for a in 0..n {
            for x in 0..ng {
                let expected = if x < l { g.right_mul(proj[a] as usize, x) } else { proj[a] as usize };
                if proj[right[a * ng + x] as usize] as usize != expected {
                    return Err(ExtensionError::ProjectionMismatch(format!("coset {a}, generator {x}")));
                }
            }
        }

        let z = right[l] as usize;
        if z == 0 {
            return Err(ExtensionError::PresentationCollapse);
        }
        let mut e = ExtGroup { rank: l, right, parent, proj, inv: Vec::new(), z, mult: None };
        if n <= DENSE_LIMIT {
            let mut m = vec![0u32; n * n];
            for &b in &order {
                for a in 0..n {
                    m[a * n + b] = if b == 0 {
                        a as u32
                    } else {
                        let (p, x) = e.parent[b];
                        e.right[m[a * n + p as usize] as usize * ng + x as usize]
                    };
                }
            }
            e.mult = Some(m);
        }
        e.inv = (0..n).map(|a| e.inverse_slow(a) as u32).collect();

        if n != 2 * g.order() {
            return Err(ExtensionError::WrongOrder { expected: 2 * g.order(), found: n });
        }
        let kernel: Vec<usize> = (0..n).filter(|&a| e.proj[a] == 0).collect();
        if kernel != [0, z] {
            return Err(ExtensionError::ProjectionMismatch("kernel of π_W is not {1, z}".into()));
        }
        if e.mul(z, z) != 0 {
            return Err(ExtensionError::ProjectionMismatch("z is not an involution".into()));
        }
        for a in 0..n {
            if e.mul(a, z) != e.mul(z, a) {
                return Err(ExtensionError::ProjectionMismatch(format!("z does not commute with element {a}")));
            }
        }
        Ok(e)
    }

    pub fn order(&self) -> usize {
        self.proj.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn t(&self, i: usize) -> usize {
        self.right[i] as usize
    }

    /// `π_W(a)` as a group element id.
    pub fn project(&self, a: usize) -> usize {
        self.proj[a] as usize
    }

    fn right_gen(&self, a: usize, x: usize) -> usize {
        self.right[a * (self.rank + 1) + x] as usize
    }

    /// Generator word (`l` stands for `z`) of the breadth-first path to `a`.
    pub fn word(&self, mut a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while a != 0 {
            let (p, x) = self.parent[a];
            w.push(x as usize);
            a = p as usize;
        }
        w.reverse();
        w
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mult {
            Some(m) => m[a * self.order() + b] as usize,
            None => self.word(b).into_iter().fold(a, |acc, x| self.right_gen(acc, x)),
        }
    }

    fn inverse_slow(&self, a: usize) -> usize {
        // t_i² = z² = 1, so the inverse is the reversed word.
        let b = self.word(a).iter().rev().fold(0, |acc, &x| self.right_gen(acc, x));
        assert_eq!(self.mul(a, b), 0, "reversed word is not an inverse");
        b
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a ▶ b = a b a⁻¹`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inverse(a))
    }

    /// `a z^e`.
    pub fn times_z(&self, a: usize, e: u32) -> usize {
        if e.is_multiple_of(2) {
            a
        } else {
            self.mul(a, self.z)
        }
    }

    /// `t_{w_1} ⋯ t_{w_k} z^e` for a word over `W`'s generators.
    pub fn lift(&self, word: &[usize], e: u32) -> usize {
        let a = word.iter().fold(0, |acc, &i| self.right_gen(acc, i));
        self.times_z(a, e)
    }

    /// Exponent `e` with `a = b z^e`, for `a`, `b` in the same fibre.
    pub fn z_offset(&self, a: usize, b: usize) -> Option<u32> {
        if a == b {
            Some(0)
        } else if a == self.mul(b, self.z) {
            Some(1)
        } else {
            None
        }
    }
}

/// Lift bits `ε` such that `s_i ↦ t_i z^{ε_i}` defines a splitting, if any.
///
/// The relation `(ŝ_i ŝ_j)^m = 1` reads `m + 1 + m(ε_i + ε_j) ≡ 0 (mod 2)`.
pub fn is_split(matrix: &CoxeterMatrix) -> Option<Vec<u8>> {
    let l = matrix.rank();
    let mut sys = Gf2System::new(l);
    for i in 0..l {
        for j in i + 1..l {
            let m = matrix.get(i, j);
            let vars: &[usize] = if m % 2 == 1 { &[i, j] } else { &[] };
            sys.push(vars, (m + 1) % 2 == 1);
        }
    }
    sys.solve().map(|x| x.into_iter().map(u8::from).collect())
}

/// Checks that `s_i ↦ t_i z^{ε_i}` satisfies the Coxeter relations in `W̃`.
pub fn verify_split(e: &ExtGroup, matrix: &CoxeterMatrix, eps: &[u8]) -> bool {
    let l = matrix.rank();
    let hat: Vec<usize> = (0..l).map(|i| e.times_z(e.t(i), eps[i] as u32)).collect();
    (0..l).all(|i| {
        (0..l).all(|j| {
            let p = e.mul(hat[i], hat[j]);
            let pow = (0..matrix.get(i, j)).fold(0, |acc, _| e.mul(acc, p));
            pow == 0
        })
    })
}
