use std::ops::{Add, Mul, Sub};

use num_traits::One;
use serde::Serialize;

use super::{CoxeterError, GroupTable};
use crate::cyclo::{cos_of_pi_over, Sign};
use crate::CycloNumber;

/// Chebyshev polynomial of the second kind, `U_n(x)`.
pub fn chebyshev_u<F>(n: usize, x: &F) -> F
where
    F: Clone + One + Add<Output = F> + Sub<Output = F> + Mul<Output = F>,
{
    let two_x = x.clone() + x.clone();
    let (mut prev, mut cur) = (F::one(), two_x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChebyshevOutcome {
    /// All `β_p` stay positive and `ℓ(s_{β_{m-1}}) = ℓ(s_β) - 2m + 2`.
    LengthDrop,
    /// `m` even and `β_{m/2-1}` is the simple root `α_(m/2)`.
    EvenShortcut,
}

#[derive(Debug, Clone)]
pub struct ChebyshevReport {
    pub beta: usize,
    pub i: usize,
    pub j: usize,
    pub m: u32,
    /// `u_p = (β_p, α_(p+1)) / (β, α_j)` for `p = 0..m`.
    pub scalars: Vec<CycloNumber>,
    /// `ℓ(s_{β_p})` while `β_p` is a positive root.
    pub lengths: Vec<usize>,
    pub outcome: ChebyshevOutcome,
}

/// Runs the alternating sequence `β_0 = β`, `β_{p+1} = s_(p+1) β_p` where
/// `α_(p)` is `α_i` for even `p` and `α_j` for odd `p`, and validates every
/// claim about it against exact arithmetic and group lengths.
pub fn chebyshev_sequence(g: &GroupTable, beta: usize, i: usize, j: usize) -> Result<ChebyshevReport, CoxeterError> {
    let l = g.rank();
    let ring = g.ring();
    let fail = |msg: String| Err(CoxeterError::PreconditionFailed(msg));
    if beta >= g.num_positive_roots() || beta < l {
        return fail(format!("root {beta} is not a non-simple positive root"));
    }
    if i >= l || j >= l || i == j {
        return fail(format!("generators ({i}, {j}) must be distinct and in range"));
    }
    let unit = |k: usize| {
        let mut v = vec![CycloNumber::zero_in(ring); l];
        v[k] = CycloNumber::from_int_in(ring, 1);
        v
    };
    let b0 = g.root(beta).to_vec();
    let delta = g.form(&unit(j), &b0);
    if delta.sign_real()? != Sign::Positive {
        return fail(format!("(α_{j}, β) is not positive"));
    }
    if !g.form(&unit(i), &b0).is_zero() {
        return fail(format!("(α_{i}, β) is not zero"));
    }
    let m = g.matrix().get(i, j);
    let c = cos_of_pi_over::<num_bigint::BigInt>(m).embed_into(ring);
    let gen = |p: usize| if p.is_multiple_of(2) { i } else { j };

    let mut scalars = Vec::with_capacity(m as usize);
    let mut lengths = Vec::new();
    let mut shortcut = None;
    let mut b = b0;
    for p in 0..m as usize {
        let a = gen(p + 1);
        let u = &g.form(&unit(a), &b) / &delta;
        assert_eq!(u, chebyshev_u(p, &c), "u_{p} differs from U_{p}(cos π/{m})");
        let expected = if p + 2 <= m as usize { Sign::Positive } else { Sign::Zero };
        assert_eq!(u.sign_real()?, expected, "u_{p} has the wrong sign");
        scalars.push(u);
        let idx = g.find_root(&b).expect("β_p is a root");
        if shortcut.is_none() {
            if g.is_positive(idx) {
                lengths.push(g.length(g.reflection(idx)));
            }
            if idx == a && p + 2 <= m as usize {
                shortcut = Some(p);
            }
        }
        b = g.reflect_simple(a, &b);
    }

    let len0 = lengths[0];
    let outcome = match shortcut {
        Some(p) => {
            assert!(m.is_multiple_of(2), "shortcut with odd m = {m}");
            assert_eq!(p + 1, m as usize / 2, "shortcut at the wrong step");
            assert_eq!(len0 + 1, m as usize, "shortcut with ℓ(s_β) ≠ m - 1");
            ChebyshevOutcome::EvenShortcut
        }
        None => {
            assert_eq!(lengths.len(), m as usize, "some β_p left Φ⁺");
            for w in lengths.windows(2) {
                assert_eq!(w[1] + 2, w[0], "length did not drop by 2");
            }
            let last = g.find_root(&rebuild(g, beta, i, j, m as usize - 1)).expect("root");
            let x = g.reflection(last);
            let a = gen(m as usize);
            assert_ne!(last, a, "β_(m-1) equals α_(m)");
            let s = g.generator(a);
            assert_eq!(g.mul(s, x), g.mul(x, s), "s_(m) does not commute with s_(β_(m-1))");
            assert_eq!(lengths[m as usize - 1] + 2 * (m as usize - 1), len0);
            ChebyshevOutcome::LengthDrop
        }
    };
    Ok(ChebyshevReport { beta, i, j, m, scalars, lengths, outcome })
}

fn rebuild(g: &GroupTable, beta: usize, i: usize, j: usize, steps: usize) -> Vec<CycloNumber> {
    let mut b = g.root(beta).to_vec();
    for p in 0..steps {
        b = g.reflect_simple(if (p + 1) % 2 == 0 { i } else { j }, &b);
    }
    b
}

/// Every `(β, i, j)` satisfying the hypotheses, in order of `β`, `i`, `j`.
pub fn chebyshev_sweep(g: &GroupTable) -> Result<Vec<ChebyshevReport>, CoxeterError> {
    let l = g.rank();
    let mut out = Vec::new();
    for beta in l..g.num_positive_roots() {
        for i in 0..l {
            for j in 0..l {
                match chebyshev_sequence(g, beta, i, j) {
                    Ok(r) => out.push(r),
                    Err(CoxeterError::PreconditionFailed(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn small_polynomials() {
        assert_eq!(chebyshev_u(0, &3i64), 1);
        assert_eq!(chebyshev_u(1, &3i64), 6);
        assert_eq!(chebyshev_u(2, &3i64), 4 * 9 - 1);
        assert_eq!(chebyshev_u(3, &2i64), 8 * 8 - 4 * 2);
    }

    #[test]
    fn sine_relation() {
        let theta = std::f64::consts::PI / 5.0;
        for n in 0..=6 {
            let lhs = theta.sin() * chebyshev_u(n, &theta.cos());
            assert!((lhs - ((n + 1) as f64 * theta).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn vanishes_at_cos_pi_over_m() {
        for m in 2..9u32 {
            let c: CycloNumber = cos_of_pi_over(m);
            assert!(chebyshev_u(m as usize - 1, &c).is_zero());
            for p in 0..m as usize - 1 {
                assert_eq!(chebyshev_u(p, &c).sign_real().unwrap(), Sign::Positive);
            }
        }
    }

    #[test]
    fn i2_4_shortcut() {
        let g = GroupTable::build(&CoxeterMatrix::preset("I2(4)").unwrap()).unwrap();
        let reports = chebyshev_sweep(&g).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().any(|r| r.outcome == ChebyshevOutcome::EvenShortcut && r.lengths[0] == 3));
    }

    #[test]
    fn rejects_bad_configuration() {
        let g = GroupTable::build(&CoxeterMatrix::preset("A2").unwrap()).unwrap();
        assert!(matches!(chebyshev_sequence(&g, 0, 0, 1), Err(CoxeterError::PreconditionFailed(_))));
        assert!(matches!(chebyshev_sequence(&g, 2, 0, 1), Err(CoxeterError::PreconditionFailed(_))));
    }
}
