mod common;

use adjunct_core::oracle::random_symplectic_basis;
use adjunct_core::symplattice::{
    canonical_bezout, form_eval, lemma21_change, pair_completion, pair_completion_with, verify_basis, BasisCheck,
    SymplecticBasis,
};
use adjunct_core::{BigInt, Error};
use common::int;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn distinct3(g: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (0..g, 0..g, 0..g).prop_filter("distinct", |(i, j, k)| i != j && j != k && i != k)
}

proptest! {
    #[test]
    fn form_is_alternating_and_bilinear(g in 1usize..=5, seed in any::<u64>()) {
        let b = random_symplectic_basis::<BigInt>(g, 8, seed);
        let (u, v, w) = (b.a(0).clone(), b.b(g - 1).clone(), b.a(g / 2).clone());
        prop_assert!(form_eval(&u, &u, g).unwrap().is_zero());
        prop_assert_eq!(form_eval(&u, &v, g).unwrap(), -form_eval(&v, &u, g).unwrap());
        let uw = u.combine(&int(3), &w, &int(-2));
        let lhs = form_eval(&uw, &v, g).unwrap();
        let rhs = form_eval(&u, &v, g).unwrap() * 3 - form_eval(&w, &v, g).unwrap() * 2;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn random_words_are_symplectic(g in 1usize..=6, steps in 0usize..40, seed in any::<u64>()) {
        let b = random_symplectic_basis::<BigInt>(g, steps, seed);
        prop_assert!(verify_basis(&b).is_symplectic());
        prop_assert!(b.determinant().is_one());
    }

    #[test]
    fn lemma21_preserves_the_form(
        (g, (i, j, k)) in (3usize..=6).prop_flat_map(|g| (Just(g), distinct3(g))),
        r in -100i64..=100, s in -100i64..=100, seed in any::<u64>(),
    ) {
        let b = random_symplectic_basis::<BigInt>(g, 10, seed);
        let out = lemma21_change(&b, i, j, k, &int(r), &int(s)).unwrap();
        prop_assert!(verify_basis(&out).is_symplectic());
        // Undoing with (-r, -s) restores the basis exactly.
        let back = lemma21_change(&out, i, j, k, &int(-r), &int(-s)).unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn lemma21_rejects_repeated_indices(g in 3usize..=6, i in 0usize..3, r in -5i64..=5) {
        let b = SymplecticBasis::<BigInt>::identity(g);
        let err = lemma21_change(&b, i, i, (i + 1) % g, &int(r), &int(r)).unwrap_err();
        prop_assert!(matches!(err, Error::InvalidIndices(_)));
    }

    #[test]
    fn canonical_bezout_is_normalized(a in -10_000i64..=10_000, b in -10_000i64..=10_000) {
        prop_assume!(a.gcd(&b) == 1);
        let (p, q) = canonical_bezout(&int(a), &int(b)).unwrap();
        prop_assert!((p.clone() * a + q.clone() * b).is_one());
        if b != 0 {
            prop_assert!(!p.is_negative() && p < int(b.abs()));
        } else {
            prop_assert_eq!((p, q), (int(a), BigInt::zero()));
        }
    }

    #[test]
    fn pair_completion_places_the_combination(
        (g, m, n) in (2usize..=6).prop_flat_map(|g| (Just(g), 0..g, 0..g)).prop_filter("m != n", |(_, m, n)| m != n),
        am in -1_000_000i64..=1_000_000, an in -1_000_000i64..=1_000_000, seed in any::<u64>(),
    ) {
        prop_assume!(am.gcd(&an) == 1);
        let b = random_symplectic_basis::<BigInt>(g, 6, seed);
        let out = pair_completion(&b, m, n, &int(am), &int(an)).unwrap();
        prop_assert!(verify_basis(&out).is_symplectic());
        prop_assert_eq!(out.a(m), &b.a(m).combine(&int(am), b.a(n), &int(an)));
    }

    #[test]
    fn pair_completion_rejects_non_bezout(am in 2i64..50, an in 2i64..50) {
        let b = SymplecticBasis::<BigInt>::identity(2);
        prop_assert!(pair_completion_with(&b, 0, 1, &int(am), &int(an), &int(1), &int(1)).is_err());
    }
}

#[test]
fn verify_reports_the_first_violation() {
    let mut v: Vec<_> = SymplecticBasis::<BigInt>::identity(2).vectors().to_vec();
    v[2] = v[2].combine(&int(2), &v[0].clone(), &int(0));
    let b = SymplecticBasis::from_vectors(2, v).unwrap();
    match verify_basis(&b) {
        BasisCheck::Violation { expected, found, .. } => {
            assert_eq!(expected, int(1));
            assert_eq!(found, int(2));
        }
        BasisCheck::Symplectic => panic!("scaled B1 must be caught"),
    }
}
