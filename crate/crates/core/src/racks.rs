//! Racks of group elements, rack 2-cocycles with values in `Z/k`, and the
//! sign cocycles `q⁺`, `q⁻` of a Coxeter group.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::GroupTable;
use crate::gf2::Gf2System;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("subset is not closed: {x} ▷ {y} = {product} lies outside")]
    NotClosed { x: usize, y: usize, product: usize },
    #[error("left translation by {0} is not a bijection")]
    NotBijective(usize),
    #[error("self-distributivity fails at ({0}, {1}, {2})")]
    NotSelfDistributive(usize, usize, usize),
    #[error("group is not dihedral of odd type")]
    NotDihedral,
    #[error("{n} does not divide {m}")]
    NotDivisor { n: u32, m: u32 },
    #[error("table has the wrong shape")]
    Shape,
}

/// Finite rack given by its action table `act[i][j] = i ▷ j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rack {
    labels: Vec<usize>,
    act: Vec<Vec<usize>>,
}

impl Rack {
    pub fn new(labels: Vec<usize>, act: Vec<Vec<usize>>) -> Result<Self, RackError> {
        let n = act.len();
        if labels.len() != n || act.iter().any(|r| r.len() != n) {
            return Err(RackError::Shape);
        }
        for (i, row) in act.iter().enumerate() {
            let mut seen = vec![false; n];
            for &j in row {
                if j >= n || std::mem::replace(&mut seen[j], true) {
                    return Err(RackError::NotBijective(i));
                }
            }
        }
        let rack = Rack { labels, act };
        if let Some((i, j, k)) = rack.self_distributivity_witness() {
            return Err(RackError::NotSelfDistributive(i, j, k));
        }
        Ok(rack)
    }

    /// Subset of a group stable under conjugation, with `x ▷ y = x y x⁻¹`.
    /// Labels are the given element ids, in the given order.
    pub fn from_group_subset(g: &GroupTable, elements: &[usize]) -> Result<Self, RackError> {
        let pos: std::collections::HashMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut act = Vec::with_capacity(elements.len());
        for &x in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &y in elements {
                let p = g.conj(x, y);
                match pos.get(&p) {
                    Some(&k) => row.push(k),
                    None => return Err(RackError::NotClosed { x, y, product: p }),
                }
            }
            act.push(row);
        }
        Rack::new(elements.to_vec(), act)
    }

    pub fn len(&self) -> usize {
        self.act.len()
    }

    pub fn is_empty(&self) -> bool {
        self.act.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn act(&self, i: usize, j: usize) -> usize {
        self.act[i][j]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// Whether `i ▷ j = j` for all `i`, `j`.
    pub fn is_trivial(&self) -> bool {
        self.act.iter().all(|row| row.iter().enumerate().all(|(j, &v)| v == j))
    }

    /// First triple violating `i ▷ (j ▷ k) = (i ▷ j) ▷ (i ▷ k)`.
    pub fn self_distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        (0..n).find_map(|i| {
            for j in 0..n {
                for k in 0..n {
                    if self.act[i][self.act[j][k]] != self.act[self.act[i][j]][self.act[i][k]] {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    /// Subrack on the given indices, relabelled `0..indices.len()`.
    pub fn subrack(&self, indices: &[usize]) -> Result<Rack, RackError> {
        let mut pos = vec![usize::MAX; self.len()];
        for (a, &i) in indices.iter().enumerate() {
            pos[i] = a;
        }
        let mut act = Vec::with_capacity(indices.len());
        for &i in indices {
            let mut row = Vec::with_capacity(indices.len());
            for &j in indices {
                let p = self.act[i][j];
                if pos[p] == usize::MAX {
                    return Err(RackError::NotClosed { x: i, y: j, product: p });
                }
                row.push(pos[p]);
            }
            act.push(row);
        }
        Rack::new(indices.iter().map(|&i| self.labels[i]).collect(), act)
    }

    /// A bijection `f` with `f(i ▷ j) = f(i) ▷' f(j)`, by backtracking.
    pub fn isomorphism(&self, other: &Rack) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, 0, &mut f, &mut used).then_some(f)
    }

    fn extend_iso(&self, other: &Rack, i: usize, f: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            f[i] = cand;
            let consistent = (0..=i).all(|a| {
                [(a, i), (i, a)].iter().all(|&(x, y)| {
                    let p = self.act[x][y];
                    p > i || f[p] == other.act[f[x]][f[y]]
                })
            });
            if consistent {
                used[cand] = true;
                if self.extend_iso(other, i + 1, f, used) {
                    return true;
                }
                used[cand] = false;
            }
            f[i] = usize::MAX;
        }
        false
    }
}

/// Rack of all reflections of `g`, in reflection order.
pub fn reflection_rack(g: &GroupTable) -> Rack {
    let all: Vec<usize> = (0..g.num_reflections()).collect();
    rack_from_class(g, &all).expect("reflections are closed under conjugation")
}

/// Rack on a subset of reflections given by reflection indices.
pub fn rack_from_class(g: &GroupTable, subset: &[usize]) -> Result<Rack, RackError> {
    let elems: Vec<usize> = subset.iter().map(|&k| g.reflection(k)).collect();
    Rack::from_group_subset(g, &elems)
}

/// The subrack `T_n = {s (s's)^j : n | j}` of the reflections of `I₂(m)`,
/// `m` odd, as elements `s (s's)^j` for `j = 0, n, 2n, …`.
pub fn dihedral_subrack(g: &GroupTable, n: u32) -> Result<Rack, RackError> {
    let m = if g.rank() == 2 { g.matrix().get(0, 1) } else { 0 };
    if m % 2 == 0 {
        return Err(RackError::NotDihedral);
    }
    if n == 0 || m % n != 0 {
        return Err(RackError::NotDivisor { n, m });
    }
    let (s, sp) = (g.generator(0), g.generator(1));
    let rot = g.mul(sp, s);
    let mut pow = vec![g.identity()];
    for _ in 1..m {
        pow.push(g.mul(*pow.last().expect("nonempty"), rot));
    }
    let elem = |j: i64| g.mul(s, pow[j.rem_euclid(m as i64) as usize]);
    let js: Vec<i64> = (0..m as i64).step_by(n as usize).collect();
    for &a in &js {
        for &b in &js {
            assert_eq!(g.conj(elem(a), elem(b)), elem(2 * a - b), "dihedral conjugation formula");
        }
    }
    let elems: Vec<usize> = js.iter().map(|&j| elem(j)).collect();
    Rack::from_group_subset(g, &elems)
}

/// Rack 2-cocycle with values in `Z/k`, stored as exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackCocycle {
    modulus: u32,
    values: Vec<Vec<u32>>,
}

impl RackCocycle {
    pub fn new(modulus: u32, values: Vec<Vec<u32>>) -> Self {
        assert!(modulus >= 1);
        let values = values.into_iter().map(|r| r.into_iter().map(|v| v % modulus).collect()).collect();
        RackCocycle { modulus, values }
    }

    pub fn constant(n: usize, modulus: u32, exponent: u32) -> Self {
        RackCocycle::new(modulus, vec![vec![exponent; n]; n])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.values[x][y]
    }

    pub fn set(&mut self, x: usize, y: usize, exponent: u32) {
        self.values[x][y] = exponent % self.modulus;
    }

    pub fn values(&self) -> &[Vec<u32>] {
        &self.values
    }

    /// Value as a sign, for cocycles with modulus 2.
    pub fn sign(&self, x: usize, y: usize) -> i8 {
        assert_eq!(self.modulus, 2);
        if self.values[x][y] == 0 {
            1
        } else {
            -1
        }
    }

    pub fn restrict(&self, indices: &[usize]) -> Self {
        let values = indices.iter().map(|&x| indices.iter().map(|&y| self.values[x][y]).collect()).collect();
        RackCocycle { modulus: self.modulus, values }
    }

    /// Versioned JSON matrix of exponents with the given row labels.
    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        serde_json::json!({
            "schema_version": "cocycle_table.v1",
            "modulus": self.modulus,
            "labels": labels,
            "exponents": self.values,
        })
    }
}

/// First triple `(x, y, z)` in lexicographic order violating
/// `q(x, y▷z) q(y, z) = q(x▷y, x▷z) q(x, z)`, or `None` for a cocycle.
pub fn is_cocycle(q: &RackCocycle, rack: &Rack) -> Option<(usize, usize, usize)> {
    let n = rack.len();
    assert_eq!(q.len(), n, "cocycle and rack sizes differ");
    let k = q.modulus();
    let witnesses: Vec<Option<(usize, usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|x| {
            for y in 0..n {
                for z in 0..n {
                    let lhs = q.get(x, rack.act(y, z)) + q.get(y, z);
                    let rhs = q.get(rack.act(x, y), rack.act(x, z)) + q.get(x, z);
                    if lhs % k != rhs % k {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
        .collect();
    witnesses.into_iter().flatten().next()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Plus,
    Minus,
}

/// `q⁺` and `q⁻` on `W × T` as bits: `1` stands for `-1`.
#[derive(Debug, Clone)]
pub struct SignCocycles {
    nrefl: usize,
    plus: Vec<u8>,
    minus: Vec<u8>,
}

impl SignCocycles {
    /// `q⁺(w, y) = -1` iff `w(α_y) ∈ Φ⁻`; `q⁻(w, y) = det w`.
    pub fn new(g: &GroupTable) -> Self {
        let nrefl = g.num_reflections();
        let plus: Vec<u8> = (0..g.order())
            .into_par_iter()
            .flat_map_iter(|w| (0..nrefl).map(move |y| g.acts_negatively(w, y) as u8))
            .collect();
        let minus = (0..g.order()).flat_map(|w| std::iter::repeat_n((g.length(w) % 2) as u8, nrefl)).collect();
        SignCocycles { nrefl, plus, minus }
    }

    /// Bit of `q(w, y)` for an element `w` and reflection index `y`.
    pub fn bit(&self, which: Which, w: usize, y: usize) -> u8 {
        match which {
            Which::Plus => self.plus[w * self.nrefl + y],
            Which::Minus => self.minus[w * self.nrefl + y],
        }
    }

    /// Restriction to `T × T` as a `Z/2` rack cocycle in reflection order.
    pub fn on_reflections(&self, g: &GroupTable, which: Which) -> RackCocycle {
        let values = (0..self.nrefl)
            .map(|x| (0..self.nrefl).map(|y| self.bit(which, g.reflection(x), y) as u32).collect())
            .collect();
        RackCocycle::new(2, values)
    }
}

pub fn q_plus(g: &GroupTable) -> RackCocycle {
    SignCocycles::new(g).on_reflections(g, Which::Plus)
}

pub fn q_minus(g: &GroupTable) -> RackCocycle {
    SignCocycles::new(g).on_reflections(g, Which::Minus)
}

/// First `(w₁, w₂, x)` violating `q(w₁w₂, x) = q(w₁, w₂ ▷ x) q(w₂, x)`.
pub fn equivariance_witness(g: &GroupTable, q: &SignCocycles, which: Which) -> Option<(usize, usize, usize)> {
    let n = g.order();
    let t = g.num_reflections();
    let conj: Vec<usize> = (0..n).flat_map(|w| (0..t).map(move |y| g.conj_reflection(w, y))).collect();
    let found: Vec<Option<(usize, usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|w1| {
            for w2 in 0..n {
                let w = g.mul(w1, w2);
                for x in 0..t {
                    let lhs = q.bit(which, w, x);
                    let rhs = q.bit(which, w1, conj[w2 * t + x]) ^ q.bit(which, w2, x);
                    if lhs != rhs {
                        return Some((w1, w2, x));
                    }
                }
            }
            None
        })
        .collect();
    found.into_iter().flatten().next()
}

pub fn check_equivariance(g: &GroupTable, which: Which) -> bool {
    let q = SignCocycles::new(g);
    for x in 0..g.num_reflections() {
        assert_eq!(q.bit(which, g.identity(), x), 0, "q(e, x) must be 1");
    }
    equivariance_witness(g, &q, which).is_none()
}

/// A map `γ: X → Z/2` with `q(x, y) = γ(x▷y)⁻¹ q'(x, y) γ(y)`, if one exists.
/// Both cocycles must take values in `±1`.
pub fn cohomologous_solve(q: &RackCocycle, q2: &RackCocycle, rack: &Rack) -> Option<Vec<u8>> {
    assert!(q.modulus() == 2 && q2.modulus() == 2, "cohomologous_solve needs ±1-valued cocycles");
    let n = rack.len();
    let mut sys = Gf2System::new(n);
    for x in 0..n {
        for y in 0..n {
            sys.push(&[rack.act(x, y), y], (q.get(x, y) ^ q2.get(x, y)) == 1);
        }
    }
    let gamma: Vec<u8> = sys.solve()?.into_iter().map(u8::from).collect();
    for x in 0..n {
        for y in 0..n {
            let rhs = gamma[rack.act(x, y)] as u32 + q2.get(x, y) + gamma[y] as u32;
            assert_eq!(q.get(x, y), rhs % 2, "γ does not satisfy the coboundary relation");
        }
    }
    Some(gamma)
}
