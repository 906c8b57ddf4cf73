use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{ExtGroup, ExtensionError, Section};
use crate::coxeter::GroupTable;
use crate::racks::{RackCocycle, SignCocycles, Which};

/// Dotted 1-based generator word, `e` for the identity.
pub fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(".")
    }
}

/// `ρ(s) ▶ ρ(y) = ρ(s ▷ y) z^{[s ≠ y]}` for simple `s` and `y ∈ T`.
pub fn check_vendramin(g: &GroupTable, e: &ExtGroup, rho: &Section) -> Result<(), ExtensionError> {
    for i in 0..g.rank() {
        let s = g.generator(i);
        for k in 0..g.num_reflections() {
            let y = g.reflection(k);
            let lhs = e.conj(rho.get(s), rho.get(y));
            let rhs = e.times_z(rho.get(g.conj(s, y)), (s != y) as u32);
            if lhs != rhs {
                return Err(ExtensionError::VendraminFailed { s: i + 1, y: word_label(g.word(y)) });
            }
        }
    }
    Ok(())
}

/// `ρ(w) ▶ ρ(y) = q⁺(w, y) q⁻(w, y)⁻¹ ρ(w ▷ y)` over `W × T`, with signs
/// read as powers of `z`.
pub fn check_global(g: &GroupTable, e: &ExtGroup, rho: &Section, q: &SignCocycles) -> Result<(), ExtensionError> {
    let t = g.num_reflections();
    let bad = (0..g.order()).into_par_iter().find_first(|&w| {
        (0..t).any(|k| {
            let y = g.reflection(k);
            let lhs = e.conj(rho.get(w), rho.get(y));
            let exp = (q.bit(Which::Plus, w, k) ^ q.bit(Which::Minus, w, k)) as u32;
            lhs != e.times_z(rho.get(g.conj(w, y)), exp)
        })
    });
    match bad {
        None => Ok(()),
        Some(w) => Err(ExtensionError::GlobalFailed { w: word_label(g.word(w)) }),
    }
}

/// Group 2-cocycle `W × W → Z/2` stored as bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCocycle2 {
    order: usize,
    bits: Vec<u8>,
}

impl GroupCocycle2 {
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.bits[x * self.order + y]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of pairs with value `z`.
    pub fn support_size(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// First `(x, y, w)` violating `φ(xy, w) φ(x, y) = φ(x, yw) φ(y, w)`.
    pub fn identity_witness(&self, g: &GroupTable) -> Option<(usize, usize, usize)> {
        let n = self.order;
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                let xy = g.mul(x, y);
                let fxy = self.get(x, y);
                for w in 0..n {
                    if self.get(xy, w) ^ fxy != self.get(x, g.mul(y, w)) ^ self.get(y, w) {
                        return Some((x, y, w));
                    }
                }
            }
            None
        })
    }

    /// Order-independent digest: the wrapping sum, over pairs with value `z`,
    /// of the first 8 bytes (little endian) of `SHA-256("x|y")` with `x`, `y`
    /// written as word labels.
    pub fn checksum(&self, g: &GroupTable) -> u64 {
        let labels: Vec<String> = (0..self.order).map(|w| word_label(g.word(w))).collect();
        (0..self.order)
            .into_par_iter()
            .map(|x| {
                let mut acc = 0u64;
                for y in 0..self.order {
                    if self.get(x, y) == 1 {
                        let h = Sha256::digest(format!("{}|{}", labels[x], labels[y]).as_bytes());
                        let mut b = [0u8; 8];
                        b.copy_from_slice(&h[..8]);
                        acc = acc.wrapping_add(u64::from_le_bytes(b));
                    }
                }
                acc
            })
            .reduce(|| 0, u64::wrapping_add)
    }
}

/// `φ_ρ(x, y) = ρ(xy) ρ(y)⁻¹ ρ(x)⁻¹` as a power of `z`.
pub fn phi_rho(g: &GroupTable, e: &ExtGroup, rho: &Section) -> GroupCocycle2 {
    let n = g.order();
    let bits: Vec<u8> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let rx_inv = e.inverse(rho.get(x));
            (0..n).map(move |y| {
                let v = e.mul(e.mul(rho.get(g.mul(x, y)), e.inverse(rho.get(y))), rx_inv);
                if v == e.identity() {
                    0
                } else {
                    assert_eq!(v, e.z(), "φ_ρ({x}, {y}) is not central");
                    1
                }
            })
        })
        .collect();
    GroupCocycle2 { order: n, bits }
}

/// First `(x, y)` violating `φ(x, y) ρ(x) ▶ ρ(y) = φ(x ▷ y, x) ρ(x ▷ y)`.
pub fn conjugation_identity_witness(
    g: &GroupTable,
    e: &ExtGroup,
    rho: &Section,
    phi: &GroupCocycle2,
) -> Option<(usize, usize)> {
    let n = g.order();
    (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| {
            let c = g.conj(x, y);
            let lhs = e.times_z(e.conj(rho.get(x), rho.get(y)), phi.get(x, y) as u32);
            let rhs = e.times_z(rho.get(c), phi.get(c, x) as u32);
            (lhs != rhs).then_some((x, y))
        })
    })
}

/// First `(x, y) ∈ T × T`, as reflection indices, violating
/// `q⁺(x, y) = φ(x, y) φ(x ▷ y, x)⁻¹ q⁻(x, y)`.
pub fn twist_witness(g: &GroupTable, phi: &GroupCocycle2, qp: &RackCocycle, qm: &RackCocycle) -> Option<(usize, usize)> {
    let t = g.num_reflections();
    (0..t).find_map(|a| {
        (0..t).find_map(|b| {
            let (x, y) = (g.reflection(a), g.reflection(b));
            let rhs = phi.get(x, y) as u32 + phi.get(g.conj(x, y), x) as u32 + qm.get(a, b);
            (qp.get(a, b) != rhs % 2).then_some((a, b))
        })
    })
}

/// Asserts the group cocycle identity, the conjugation identity and the
/// twist relation between `q⁺` and `q⁻`.
pub fn certify_twist(
    g: &GroupTable,
    e: &ExtGroup,
    rho: &Section,
    phi: &GroupCocycle2,
    qp: &RackCocycle,
    qm: &RackCocycle,
) -> Result<(), ExtensionError> {
    let label = |w: usize| word_label(g.word(w));
    for w in 0..g.order() {
        if phi.get(g.identity(), w) != 0 {
            return Err(ExtensionError::CocycleIdentityFailed { x: "e".into(), y: label(w), w: "-".into() });
        }
    }
    if let Some((x, y, w)) = phi.identity_witness(g) {
        return Err(ExtensionError::CocycleIdentityFailed { x: label(x), y: label(y), w: label(w) });
    }
    if let Some((x, y)) = conjugation_identity_witness(g, e, rho, phi) {
        return Err(ExtensionError::ConjugationIdentityFailed { x: label(x), y: label(y) });
    }
    if let Some((a, b)) = twist_witness(g, phi, qp, qm) {
        return Err(ExtensionError::TwistFailed { x: label(g.reflection(a)), y: label(g.reflection(b)) });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn labels() {
        assert_eq!(word_label(&[]), "e");
        assert_eq!(word_label(&[0, 2, 1]), "1.3.2");
    }

    #[test]
    fn broken_section_is_caught() {
        let g = GroupTable::build(&CoxeterMatrix::preset("A2").unwrap()).unwrap();
        let e = ExtGroup::build(&g).unwrap();
        let graph = g.conjugacy_graph();
        let rho = Section::build(&g, &e, &graph).unwrap();
        assert!(check_vendramin(&g, &e, &rho).is_ok());
        // The plain lift of every reflection word, with no z, violates the condition.
        let plain = Section::plain_lift(&g, &e);
        assert!(matches!(check_vendramin(&g, &e, &plain), Err(ExtensionError::VendraminFailed { .. })));
    }
}
