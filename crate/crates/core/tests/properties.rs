//! Property-based invariants for the field, polynomial, and checker layers.

use proptest::prelude::*;

use ppwb::poly::{fold_exponent, Poly};
use ppwb::ppcheck::{
    brute_force_check, decompose_multiplicative, hermite_check, revalidate_witness,
    revalidate_zieve_witness, zieve_check, MultiplicativeForm,
};
use ppwb::FieldSpec;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just((3u64, 1u32)),
        Just((3, 2)),
        Just((3, 3)),
        Just((5, 1)),
        Just((5, 2)),
        Just((7, 1)),
        Just((7, 2)),
        Just((11, 1)),
        Just((13, 1)),
    ]
    .prop_map(|(p, e)| FieldSpec::new(p, e).unwrap())
}

fn element_strategy() -> impl Strategy<Value = (FieldSpec, u64, u64, u64)> {
    field_strategy().prop_flat_map(|f| {
        let q = f.q();
        (Just(f), 0..q, 0..q, 0..q)
    })
}

fn poly_strategy(max_extra_len: usize) -> impl Strategy<Value = Poly> {
    field_strategy().prop_flat_map(move |f| {
        let q = f.q();
        proptest::collection::vec(0..q, 0..=(q as usize + max_extra_len))
            .prop_map(move |codes| Poly::from_codes(&f, &codes).unwrap())
    })
}

proptest! {
    #[test]
    fn field_axioms_on_random_triples((f, a, b, c) in element_strategy()) {
        let a = f.element_from_code(a).unwrap();
        let b = f.element_from_code(b).unwrap();
        let c = f.element_from_code(c).unwrap();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn fermat_and_code_round_trip((f, a, _, _) in element_strategy()) {
        let x = f.element_from_code(a).unwrap();
        prop_assert_eq!(f.element_from_code(x.code()).unwrap(), x.clone());
        prop_assert_eq!(x.pow(f.q()), x.clone());
        if !x.is_zero() {
            prop_assert!(x.pow(f.q() - 1).is_one());
        }
    }

    #[test]
    fn reduce_preserves_mapping(p in poly_strategy(40)) {
        let f = p.field().clone();
        let r = p.reduce_mod_qx();
        if let Some(d) = r.degree() {
            prop_assert!(d <= f.q() as usize - 1);
        }
        prop_assert_eq!(r.reduce_mod_qx(), r.clone());
        for x in f.elements() {
            prop_assert_eq!(p.eval(&x), r.eval(&x));
        }
    }

    #[test]
    fn ring_laws(a in poly_strategy(4), codes_b in proptest::collection::vec(0u64..3, 0..6), codes_c in proptest::collection::vec(0u64..3, 0..6)) {
        // b and c live in a's field; coefficient codes < 3 are valid everywhere.
        let f = a.field().clone();
        let b = Poly::from_codes(&f, &codes_b).unwrap();
        let c = Poly::from_codes(&f, &codes_c).unwrap();
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication(p in poly_strategy(2), s in 0u64..=6) {
        let mut acc = Poly::one(p.field());
        for _ in 0..s {
            acc = &acc * &p;
        }
        prop_assert_eq!(p.pow_mod(s), acc.reduce_mod_qx());
    }

    #[test]
    fn fold_exponent_is_a_mapping_normal_form(f in field_strategy(), m in 0u128..100_000) {
        let q = f.q();
        let folded = fold_exponent(m, q);
        prop_assert!(folded <= q - 1);
        prop_assert_eq!(fold_exponent(folded as u128, q), folded);
        // x^m and x^folded agree pointwise.
        for x in f.elements() {
            prop_assert_eq!(x.pow(m as u64), x.pow(folded));
        }
    }

    #[test]
    fn negative_brute_verdicts_revalidate(p in poly_strategy(6)) {
        let v = brute_force_check(&p);
        if let Some(w) = &v.witness {
            prop_assert!(revalidate_witness(&p, w));
        }
    }

    #[test]
    fn hermite_agrees_with_brute_force(p in poly_strategy(2)) {
        prop_assume!(p.field().q() <= 49);
        let b = brute_force_check(&p);
        let h = hermite_check(&p).unwrap();
        prop_assert_eq!(b.is_permutation, h.is_permutation);
        if let Some(w) = &h.witness {
            prop_assert!(revalidate_witness(&p, w));
        }
    }

    #[test]
    fn decompose_round_trip(p in poly_strategy(6), d_index in 0usize..6) {
        let f = p.field().clone();
        let divisors: Vec<u64> = (1..=f.q() - 1).filter(|d| (f.q() - 1) % d == 0).collect();
        let d = divisors[d_index % divisors.len()];
        if let Some(form) = decompose_multiplicative(&p, d).unwrap() {
            prop_assert_eq!(form.expand().reduce_mod_qx(), p.reduce_mod_qx());
            // ... and the form's verdict matches the polynomial's.
            let z = zieve_check(&form, &f).unwrap();
            let b = brute_force_check(&p);
            prop_assert_eq!(z.is_permutation, b.is_permutation);
            if let Some(w) = &z.witness {
                prop_assert!(revalidate_zieve_witness(&form, &f, w));
            }
        }
    }

    #[test]
    fn constructed_forms_decompose_back(f in field_strategy(), r in 1u64..5, d_index in 0usize..6, h_codes in proptest::collection::vec(0u64..3, 1..5)) {
        let divisors: Vec<u64> = (1..=f.q() - 1).filter(|d| (f.q() - 1) % d == 0).collect();
        let d = divisors[d_index % divisors.len()];
        let h = Poly::from_codes(&f, &h_codes).unwrap();
        let form = MultiplicativeForm { r, d, h };
        let expanded = form.expand();
        if expanded.is_zero() {
            return Ok(());
        }
        let redone = decompose_multiplicative(&expanded, d).unwrap();
        prop_assert!(redone.is_some());
        prop_assert_eq!(redone.unwrap().expand(), expanded);
    }

    #[test]
    fn poly_text_round_trip(p in poly_strategy(3)) {
        let f = p.field().clone();
        let text = p.to_code_string();
        prop_assert_eq!(Poly::parse(&f, &text).unwrap(), p);
    }
}

#[test]
fn frobenius_additivity_up_to_81() {
    for (p, e) in [(3u64, 4u32), (5, 2), (7, 2), (3, 3)] {
        let f = FieldSpec::new(p, e).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!((&x + &y).pow(p), &x.pow(p) + &y.pow(p));
            }
        }
    }
}
