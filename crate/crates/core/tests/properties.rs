use proptest::prelude::*;

use coxnichols::nichols::{hilbert_coeffs, oracle_mismatch, BraidWord, CyclotomicField, Field, Mode, PrimeField};
use coxnichols::{BraidedSpace, CoxeterMatrix, GroupTable};

/// A diagonal braiding of dimension 1 to 3 over `ζ_k`.
fn diagonal_space() -> impl Strategy<Value = BraidedSpace> {
    (prop::sample::select(vec![2u32, 3, 4, 6]), 1usize..=3).prop_flat_map(|(k, d)| {
        prop::collection::vec(prop::collection::vec(0..k, d), d).prop_map(move |q| {
            let labels = (0..d).map(|i| format!("x{i}")).collect();
            BraidedSpace::diagonal(k, labels, q).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorizations_match_literal_sum(v in diagonal_space()) {
        for n in 0..=3 {
            prop_assert_eq!(oracle_mismatch(&v, n), None);
        }
    }

    #[test]
    fn modular_ranks_match_exact(v in diagonal_space()) {
        let exact = hilbert_coeffs(&v, 3, Mode::Exact).unwrap();
        let modular = hilbert_coeffs(&v, 3, Mode::Modular { primes: 2 }).unwrap();
        prop_assert_eq!(exact, modular);
    }

    #[test]
    fn braid_relation_on_operators(v in diagonal_space()) {
        // σ1 σ2 σ1 = σ2 σ1 σ2 and σ1 σ1⁻¹ = 1 on V^⊗3.
        let a = BraidWord(vec![1, 2, 1]).operator(&v, 3);
        let b = BraidWord(vec![2, 1, 2]).operator(&v, 3);
        let size = v.dim().pow(3);
        for x in 0..size {
            prop_assert_eq!(a.image(x), b.image(x));
            prop_assert_eq!(BraidWord(vec![1, -1]).operator(&v, 3).image(x), (x, 0));
        }
    }

    #[test]
    fn group_words(word in prop::collection::vec(0usize..3, 0..24)) {
        let g = GroupTable::build(&CoxeterMatrix::preset("H3").unwrap()).unwrap();
        let w = g.element_of_word(&word);
        prop_assert!(g.length(w) <= word.len());
        prop_assert_eq!(g.length(w) % 2, word.len() % 2);
        prop_assert_eq!(g.det(w) as i32, if word.len() % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(g.element_of_word(g.word(w)), w);
        prop_assert!(g.is_reduced(g.word(w)));
        prop_assert_eq!(g.mul(w, g.inverse(w)), g.identity());
    }

    #[test]
    fn cyclotomic_field_axioms(
        a in prop::collection::vec(-5i64..5, 6),
        b in prop::collection::vec(-5i64..5, 6),
        c in prop::collection::vec(-5i64..5, 6),
    ) {
        let f = CyclotomicField::new(6);
        let p = PrimeField::new(1_073_741_827, 2).unwrap();
        let (x, y, z) = (f.from_group_ring(&a), f.from_group_ring(&b), f.from_group_ring(&c));
        prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        if !f.is_zero(&x) {
            prop_assert_eq!(f.mul(&x, &f.inv(&x)), f.one());
        }
        let (s, t) = (p.from_group_ring(&a[..2]), p.from_group_ring(&b[..2]));
        if !p.is_zero(&s) {
            prop_assert_eq!(p.mul(&p.mul(&s, &t), &p.inv(&s)), t);
        }
    }
}
