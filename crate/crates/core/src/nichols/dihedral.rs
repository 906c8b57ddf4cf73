//! Diagonal braidings of Yetter–Drinfeld modules over the dihedral group of
//! order `4r`, `r` odd, graded by the rotation subgroup `C = ⟨ss'⟩ ≅ Z/2r`.
//!
//! A basis vector of degree `(ss')^a` on which `ss'` acts by `ζ^b` has
//! braiding `c(v ⊗ w) = ζ^{a_v b_w} w ⊗ v`, with `ζ` a primitive `2r`-th root.

use serde::Serialize;

use super::{BraidedSpace, NicholsError};

/// Irreducible summands with finite-dimensional Nichols algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Summand {
    /// One vector of degree `(ss')^r` with `ss'` acting by `-1`.
    V0,
    /// `v_± ` of degree `(ss')^{±h}` with `ss'` acting by `ζ^{±j}`.
    V { h: u32, j: u32 },
}

impl Summand {
    pub fn dim(&self) -> usize {
        match self {
            Summand::V0 => 1,
            Summand::V { .. } => 2,
        }
    }

    /// `(degree exponent, character exponent)` of each basis vector, mod `2r`.
    fn grading(&self, r: u32) -> Vec<(u32, u32)> {
        let n = 2 * r;
        match *self {
            Summand::V0 => vec![(r, r)],
            Summand::V { h, j } => vec![(h % n, j % n), ((n - h % n) % n, (n - j % n) % n)],
        }
    }

    pub fn label(&self) -> String {
        match self {
            Summand::V0 => "V0".into(),
            Summand::V { h, j } => format!("V({h},{j})"),
        }
    }
}

impl std::str::FromStr for Summand {
    type Err = NicholsError;

    /// Accepts `V0` and `V(h,j)`, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "V0" {
            return Ok(Summand::V0);
        }
        let bad = || NicholsError::InvalidParameter(format!("cannot parse summand {s:?}"));
        let inner = t.strip_prefix("V(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (h, j) = inner.split_once(',').ok_or_else(bad)?;
        Ok(Summand::V { h: h.parse().map_err(|_| bad())?, j: j.parse().map_err(|_| bad())? })
    }
}

fn check_r(r: u32) -> Result<(), NicholsError> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(NicholsError::InvalidParameter(format!("r = {r} must be odd and at least 3")));
    }
    Ok(())
}

/// `h ∈ {1..r}` odd, `j ∈ {1..r-2}` odd, `r | hj`.
pub fn is_admissible(r: u32, h: u32, j: u32) -> bool {
    (1..=r).contains(&h) && (1..=r.saturating_sub(2)).contains(&j) && h % 2 == 1 && j % 2 == 1 && (h * j).is_multiple_of(r)
}

/// `V0` followed by the admissible `V(h, j)` in lexicographic order.
pub fn admissible_summands(r: u32) -> Result<Vec<Summand>, NicholsError> {
    check_r(r)?;
    let mut out = vec![Summand::V0];
    for h in (1..=r).step_by(2) {
        for j in (1..=r - 2).step_by(2) {
            if (h * j) % r == 0 {
                out.push(Summand::V { h, j });
            }
        }
    }
    Ok(out)
}

/// `r | (h j' + h' j)`; `V0` is compatible with everything.
pub fn compatible(r: u32, a: Summand, b: Summand) -> bool {
    match (a, b) {
        (Summand::V { h, j }, Summand::V { h: h2, j: j2 }) => (h * j2 + h2 * j) % r == 0,
        _ => true,
    }
}

/// Pairwise compatibility over all pairs, including each summand with itself.
pub fn compatibility(r: u32, summands: &[Summand]) -> bool {
    summands.iter().all(|&a| summands.iter().all(|&b| compatible(r, a, b)))
}

/// The direct sum of `summands` (repeats allowed) as a diagonal braided
/// space over `ζ_{2r}`.
pub fn dihedral_yd(r: u32, summands: &[Summand]) -> Result<BraidedSpace, NicholsError> {
    check_r(r)?;
    let n = 2 * r;
    let mut labels = Vec::new();
    let mut grading = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        if let Summand::V { h, j } = *s {
            if !is_admissible(r, h, j) {
                return Err(NicholsError::InvalidSummand { r, h, j });
            }
        }
        let g = s.grading(r);
        let signs: &[&str] = if g.len() == 1 { &[""] } else { &["+", "-"] };
        for (sign, ab) in signs.iter().zip(g) {
            labels.push(format!("{}{}#{i}", s.label(), sign));
            grading.push(ab);
        }
    }
    let q = grading.iter().map(|&(a, _)| grading.iter().map(|&(_, b)| (a * b) % n).collect()).collect();
    BraidedSpace::diagonal(n, labels, q)
}

/// Generalized Dynkin diagram of a diagonal braiding: vertex labels `q_ii`
/// and an edge `{a, b}` labelled `q_ab q_ba` wherever that is not 1, all as
/// exponents of `ζ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinDiagram {
    pub k: u32,
    pub vertices: Vec<u32>,
    pub edges: Vec<(usize, usize, u32)>,
}

pub fn dynkin_diagram(v: &BraidedSpace) -> Result<DynkinDiagram, NicholsError> {
    if !v.is_diagonal() {
        return Err(NicholsError::NotDiagonal);
    }
    let k = v.modulus();
    let d = v.dim();
    let vertices = (0..d).map(|a| v.q(a, a)).collect();
    let mut edges = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let e = (v.q(a, b) + v.q(b, a)) % k;
            if e != 0 {
                edges.push((a, b, e));
            }
        }
    }
    Ok(DynkinDiagram { k, vertices, edges })
}

impl DynkinDiagram {
    /// `Some(ξ)` if this is a 4-cycle of `-1` vertices whose edges alternate
    /// `ξ, ξ⁻¹` around the cycle with `ξ ≠ 1`; `ξ` is the label of the edge at
    /// vertex 0 towards its smaller neighbour.
    pub fn four_cycle_label(&self) -> Option<u32> {
        let k = self.k;
        if self.vertices.len() != 4 || self.edges.len() != 4 || !k.is_multiple_of(2) || self.vertices.iter().any(|&q| q != k / 2) {
            return None;
        }
        let nbrs = |a: usize| -> Vec<(usize, u32)> {
            let mut n: Vec<(usize, u32)> = self
                .edges
                .iter()
                .filter_map(|&(x, y, e)| if x == a { Some((y, e)) } else if y == a { Some((x, e)) } else { None })
                .collect();
            n.sort();
            n
        };
        if (0..4).any(|a| nbrs(a).len() != 2) {
            return None;
        }
        // Walk the cycle from vertex 0.
        let mut prev = 0;
        let (mut cur, xi) = nbrs(0)[0];
        let mut expected = (k - xi) % k;
        for _ in 0..3 {
            let (next, e) = *nbrs(cur).iter().find(|&&(x, _)| x != prev)?;
            if e != expected {
                return None;
            }
            expected = (k - e) % k;
            prev = cur;
            cur = next;
        }
        (cur == 0 && xi != 0).then_some(xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_labels() {
        for s in [Summand::V0, Summand::V { h: 5, j: 3 }] {
            assert_eq!(s.label().parse::<Summand>().unwrap(), s);
        }
        assert_eq!(" V( 9 , 1 )".parse::<Summand>().unwrap(), Summand::V { h: 9, j: 1 });
        assert!("V1".parse::<Summand>().is_err());
    }

    /// Every `(h, j)` in a generous box, filtered by the constraints directly.
    fn brute_force(r: u32) -> Vec<Summand> {
        let mut out = vec![Summand::V0];
        for h in 0..=2 * r {
            for j in 0..=2 * r {
                let ok = h >= 1 && h <= r && j >= 1 && j + 2 <= r && h % 2 == 1 && j % 2 == 1 && (h * j) % r == 0;
                if ok {
                    out.push(Summand::V { h, j });
                }
            }
        }
        out
    }

    #[test]
    fn admissible_lists() {
        assert_eq!(admissible_summands(5).unwrap(), vec![Summand::V0, Summand::V { h: 5, j: 1 }, Summand::V { h: 5, j: 3 }]);
        for r in [3, 5, 7, 9, 15] {
            assert_eq!(admissible_summands(r).unwrap(), brute_force(r), "r = {r}");
        }
        assert!(admissible_summands(4).is_err());
    }

    #[test]
    fn single_summands_are_exterior() {
        let v = dihedral_yd(5, &[Summand::V { h: 5, j: 1 }]).unwrap();
        let dd = dynkin_diagram(&v).unwrap();
        assert_eq!(dd.vertices, vec![5, 5]);
        assert!(dd.edges.is_empty());
        let v0 = dihedral_yd(5, &[Summand::V0]).unwrap();
        assert_eq!(v0.q(0, 0), 5);
        assert!(dynkin_diagram(&v0).unwrap().edges.is_empty());
        assert!(matches!(dihedral_yd(5, &[Summand::V { h: 3, j: 1 }]), Err(NicholsError::InvalidSummand { .. })));
    }

    #[test]
    fn incompatible_pair_gives_four_cycle() {
        let (a, b) = (Summand::V { h: 3, j: 3 }, Summand::V { h: 9, j: 1 });
        assert!(!compatible(9, a, b));
        let dd = dynkin_diagram(&dihedral_yd(9, &[a, b]).unwrap()).unwrap();
        // ξ = ζ^{3·1 + 9·3} = ζ^{30} = ζ^{12} in Z/18.
        let xi = dd.four_cycle_label().unwrap();
        assert!(xi == 12 || xi == 6);
        assert!(compatibility(5, &[Summand::V { h: 5, j: 1 }, Summand::V { h: 5, j: 3 }, Summand::V0]));
    }
}
