//! Yetter–Drinfeld modules over a finite Coxeter group whose generators act
//! by monomial matrices, and the modules over `I₂(6)` built from explicit
//! action tables.

use serde::Serialize;

use super::{BraidedSpace, NicholsError};
use crate::coxeter::GroupTable;
use crate::racks::{cohomologous_solve, rack_from_class, SignCocycles, Which};

/// Monomial action: basis vector `b ↦ ζ^{exp[b]} e_{perm[b]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAction {
    pub perm: Vec<usize>,
    pub exp: Vec<u32>,
}

impl MonomialAction {
    fn identity(d: usize) -> Self {
        MonomialAction { perm: (0..d).collect(), exp: vec![0; d] }
    }

    /// `self ∘ other`.
    fn then(&self, other: &MonomialAction, k: u32) -> MonomialAction {
        let (perm, exp) = other.perm.iter().zip(&other.exp).map(|(&t, &e)| (self.perm[t], (e + self.exp[t]) % k)).unzip();
        MonomialAction { perm, exp }
    }
}

/// Yetter–Drinfeld module with homogeneous basis: `degrees[b]` is a group
/// element id and `gens[i]` is the action of the simple reflection `s_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YdModule {
    k: u32,
    labels: Vec<String>,
    degrees: Vec<usize>,
    actions: Vec<MonomialAction>,
}

impl YdModule {
    /// Checks the Coxeter relations on the module and the compatibility
    /// `deg(w · b) = w deg(b) w⁻¹`, then tabulates the action of every element.
    pub fn new(
        g: &GroupTable,
        k: u32,
        labels: Vec<String>,
        degrees: Vec<usize>,
        gens: Vec<MonomialAction>,
    ) -> Result<Self, NicholsError> {
        let d = labels.len();
        let bad = |m: String| Err(NicholsError::NotAModule(m));
        if degrees.len() != d || gens.len() != g.rank() || gens.iter().any(|a| a.perm.len() != d || a.exp.len() != d) {
            return bad("shape mismatch".into());
        }
        let m = g.matrix();
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                let p = gens[i].then(&gens[j], k);
                let pw = (0..m.get(i, j)).fold(MonomialAction::identity(d), |acc, _| acc.then(&p, k));
                if pw != MonomialAction::identity(d) {
                    return bad(format!("(s{} s{})^{} acts nontrivially", i + 1, j + 1, m.get(i, j)));
                }
            }
        }
        let actions: Vec<MonomialAction> = (0..g.order())
            .map(|w| g.word(w).iter().rev().fold(MonomialAction::identity(d), |acc, &i| gens[i].then(&acc, k)))
            .collect();
        for (w, a) in actions.iter().enumerate() {
            for b in 0..d {
                if degrees[a.perm[b]] != g.conj(w, degrees[b]) {
                    return bad(format!("action of element {w} does not respect degrees at {}", labels[b]));
                }
            }
        }
        Ok(YdModule { k, labels, degrees, actions })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn action(&self, w: usize) -> &MonomialAction {
        &self.actions[w]
    }

    /// `U ⊕ U'` with exponents over the least common multiple of the moduli.
    pub fn direct_sum(&self, g: &GroupTable, other: &YdModule) -> Result<YdModule, NicholsError> {
        let k = num_integer::lcm(self.k, other.k);
        let (fa, fb) = (k / self.k, k / other.k);
        let d = self.dim();
        let gens = (0..g.rank())
            .map(|i| {
                let (a, b) = (&self.actions[g.generator(i)], &other.actions[g.generator(i)]);
                MonomialAction {
                    perm: a.perm.iter().copied().chain(b.perm.iter().map(|&t| t + d)).collect(),
                    exp: a.exp.iter().map(|e| e * fa).chain(b.exp.iter().map(|e| e * fb)).collect(),
                }
            })
            .collect();
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let degrees = self.degrees.iter().chain(&other.degrees).copied().collect();
        YdModule::new(g, k, labels, degrees, gens)
    }

    /// `c(v ⊗ w) = deg(v) · w ⊗ v`.
    pub fn braided_space(&self) -> Result<BraidedSpace, NicholsError> {
        let d = self.dim();
        let act = (0..d).map(|x| self.actions[self.degrees[x]].perm.clone()).collect();
        let q = (0..d).map(|x| self.actions[self.degrees[x]].exp.clone()).collect();
        BraidedSpace::new(self.k, self.labels.clone(), act, q)
    }
}

fn i2_6(g: &GroupTable) -> Result<(), NicholsError> {
    if g.rank() != 2 || g.matrix().get(0, 1) != 6 {
        return Err(NicholsError::InvalidParameter("the group must be of type I2(6)".into()));
    }
    Ok(())
}

fn sign_exp(negative: bool) -> u32 {
    negative as u32
}

/// `U_j`, `j ∈ {0, 1}`: basis `e_s, e_{s'ss'}, e_{ss'ss's}` with
/// `s·e_s = -e_s`, `s·e_{s'ss'} = (-1)^{j+1} e_{ss'ss's}`, `s·e_{ss'ss's} = -(-1)^j e_{s'ss'}`,
/// `ss'·e_s = e_{ss'ss's}`, `ss'·e_{s'ss'} = (-1)^j e_s`, `ss'·e_{ss'ss's} = e_{s'ss'}`.
pub fn u_module(g: &GroupTable, j: u8) -> Result<YdModule, NicholsError> {
    i2_6(g)?;
    let odd = j % 2 == 1;
    let degrees = vec![g.element_of_word(&[0]), g.element_of_word(&[1, 0, 1]), g.element_of_word(&[0, 1, 0, 1, 0])];
    let s = MonomialAction { perm: vec![0, 2, 1], exp: vec![1, sign_exp(!odd), sign_exp(!odd)] };
    let rot = MonomialAction { perm: vec![2, 0, 1], exp: vec![0, sign_exp(odd), 0] };
    // s' = s · (ss') as operators.
    let sp = s.then(&rot, 2);
    let labels = vec!["e_s".into(), "e_s'ss'".into(), "e_ss'ss's".into()];
    YdModule::new(g, 2, labels, degrees, vec![s, sp])
}

/// `U'_j`, the image of `U_j` under the automorphism swapping `s` and `s'`:
/// basis `e_{s'}, e_{ss's}, e_{s'ss'ss'}` with `s·e_{s'} = -e_{ss's}`,
/// `s·e_{ss's} = -e_{s'}`, `s·e_{s'ss'ss'} = (-1)^{j+1} e_{s'ss'ss'}`,
/// `ss'·e_{s'} = e_{ss's}`, `ss'·e_{ss's} = e_{s'ss'ss'}`, `ss'·e_{s'ss'ss'} = (-1)^j e_{s'}`.
pub fn u_prime_module(g: &GroupTable, j: u8) -> Result<YdModule, NicholsError> {
    i2_6(g)?;
    let odd = j % 2 == 1;
    let degrees = vec![g.element_of_word(&[1]), g.element_of_word(&[0, 1, 0]), g.element_of_word(&[1, 0, 1, 0, 1])];
    let s = MonomialAction { perm: vec![1, 0, 2], exp: vec![1, 1, sign_exp(!odd)] };
    let rot = MonomialAction { perm: vec![1, 2, 0], exp: vec![0, 0, sign_exp(odd)] };
    let sp = s.then(&rot, 2);
    let labels = vec!["e_s'".into(), "e_ss's".into(), "e_s'ss'ss'".into()];
    YdModule::new(g, 2, labels, degrees, vec![s, sp])
}

/// `V_{3,1}`: `v_±` of degree `(ss')³` with `ss'·v_± = ζ^{±1} v_±`,
/// `s·v_± = v_∓`, over `ζ = ζ_6`.
pub fn v31_module(g: &GroupTable) -> Result<YdModule, NicholsError> {
    i2_6(g)?;
    let top = g.longest();
    let s = MonomialAction { perm: vec![1, 0], exp: vec![0, 0] };
    let rot = MonomialAction { perm: vec![0, 1], exp: vec![1, 5] };
    let sp = s.then(&rot, 6);
    YdModule::new(g, 6, vec!["v+".into(), "v-".into()], vec![top, top], vec![s, sp])
}

/// `V_0^j`: one vector of degree `(ss')³` with `ss'` acting by `-1` and `s` by `(-1)^j`.
pub fn v0_module(g: &GroupTable, j: u8) -> Result<YdModule, NicholsError> {
    i2_6(g)?;
    let s = MonomialAction { perm: vec![0], exp: vec![(j % 2) as u32] };
    let rot = MonomialAction { perm: vec![0], exp: vec![1] };
    let sp = s.then(&rot, 2);
    YdModule::new(g, 2, vec![format!("v0^{j}")], vec![g.longest()], vec![s, sp])
}

/// How the braiding of a module supported on one reflection class compares
/// with `q⁺` and `q⁻` restricted to that class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub j: u8,
    pub equals_plus: bool,
    pub equals_minus: bool,
    pub cohomologous_plus: bool,
    pub cohomologous_minus: bool,
}

/// Compares the braiding of `U_j` entry by entry with `(T₁, q^±)`, `T₁` the
/// class of `s`, matching basis vectors to their degrees.
pub fn identify_u(g: &GroupTable, j: u8) -> Result<Identification, NicholsError> {
    identify(g, j, &u_module(g, j)?)
}

/// The same comparison for `U'_j` and `T₂`, the class of `s'`.
pub fn identify_u_prime(g: &GroupTable, j: u8) -> Result<Identification, NicholsError> {
    identify(g, j, &u_prime_module(g, j)?)
}

fn identify(g: &GroupTable, j: u8, u: &YdModule) -> Result<Identification, NicholsError> {
    let bs = u.braided_space()?;
    let class: Vec<usize> = u
        .degrees()
        .iter()
        .map(|&w| g.reflection_index(w).expect("degrees are reflections"))
        .collect();
    let rack = rack_from_class(g, &class).map_err(|e| NicholsError::NotAModule(e.to_string()))?;
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(bs.act(x, y), rack.act(x, y), "U_j realizes the conjugation rack");
        }
    }
    let signs = SignCocycles::new(g);
    let q_u = crate::racks::RackCocycle::new(2, (0..3).map(|x| (0..3).map(|y| bs.q(x, y)).collect()).collect());
    let compare = |which: Which| {
        let q = signs.on_reflections(g, which).restrict(&class);
        (q == q_u, cohomologous_solve(&q, &q_u, &rack).is_some())
    };
    let (equals_plus, cohomologous_plus) = compare(Which::Plus);
    let (equals_minus, cohomologous_minus) = compare(Which::Minus);
    Ok(Identification { j, equals_plus, equals_minus, cohomologous_plus, cohomologous_minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn i26() -> GroupTable {
        GroupTable::build(&CoxeterMatrix::preset("I2(6)").unwrap()).unwrap()
    }

    #[test]
    fn modules_satisfy_relations() {
        let g = i26();
        for j in 0..2 {
            assert_eq!(u_module(&g, j).unwrap().dim(), 3);
            assert_eq!(v0_module(&g, j).unwrap().dim(), 1);
        }
        assert_eq!(v31_module(&g).unwrap().braided_space().unwrap().q(0, 0), 3);
    }

    #[test]
    fn wrong_relations_are_rejected() {
        let g = i26();
        let s = MonomialAction { perm: vec![0], exp: vec![2] };
        let ok = YdModule::new(&g, 4, vec!["x".into()], vec![g.longest()], vec![s.clone(), s.clone()]);
        assert!(ok.is_ok());
        // s' acting by ζ_4 squares to -1.
        let bad = YdModule::new(&g, 4, vec!["x".into()], vec![g.longest()], vec![s, MonomialAction { perm: vec![0], exp: vec![1] }]);
        assert!(matches!(bad, Err(NicholsError::NotAModule(_))));
    }

    #[test]
    fn v0_and_u_braid_trivially_iff_indices_match() {
        let g = i26();
        for j in 0..2u8 {
            for jp in 0..2u8 {
                let sum = u_module(&g, j).unwrap().direct_sum(&g, &v0_module(&g, jp).unwrap()).unwrap();
                let bs = sum.braided_space().unwrap();
                let trivial = (0..3).all(|x| bs.c_squared_fixes(x, 3) && bs.c_squared_fixes(3, x));
                assert_eq!(trivial, j == jp, "j = {j}, j' = {jp}");
            }
        }
    }

    #[test]
    fn u_prime_is_a_module_on_the_other_class() {
        let g = i26();
        for j in 0..2u8 {
            let u = u_prime_module(&g, j).unwrap();
            assert!(u.degrees().iter().all(|&w| g.reflection_index(w).is_some()));
            // For σ in the class of s', c² on e_σ ⊗ v_0^{j'} is -(-1)^{j+j'}.
            for jp in 0..2u8 {
                let bs = u.direct_sum(&g, &v0_module(&g, jp).unwrap()).unwrap().braided_space().unwrap();
                let trivial = (0..3).all(|x| bs.c_squared_fixes(x, 3) && bs.c_squared_fixes(3, x));
                assert_eq!(trivial, j != jp, "j = {j}, j' = {jp}");
            }
        }
        let (u0, u1) = (identify_u_prime(&g, 0).unwrap(), identify_u_prime(&g, 1).unwrap());
        assert!(u0.equals_minus && !u0.equals_plus);
        assert!(!u1.equals_minus && !u1.equals_plus);
        assert!(u0.cohomologous_plus && u0.cohomologous_minus && u1.cohomologous_plus && u1.cohomologous_minus);
    }
}
