mod common;

use adjunct_core::adjunction::{
    best_bound, bound_th1, bound_th2, bound_th3, bound_th4, lemma41_pathway, lemma42_pathway, max_insertion_degree,
    normalize_orientation, TheoremId,
};
use adjunct_core::swtopology::wu_parity_check;
use adjunct_core::{Case, Error};
use common::{bound, case, int, lhs, raw_case};
use proptest::prelude::*;

/// Valid basic-class case parameters `(b2_plus, b1, e, n, d)`.
fn params() -> impl Strategy<Value = (usize, usize, i64, i64, i64)> {
    (1usize..=3, 0usize..=5, -20i64..=20, -4i64..=20, 0i64..=15).prop_map(|(b2, b1, e, n, half)| {
        let e = if wu_parity_check(&int(e), &int(n)) { e } else { e + 1 };
        (b2, b1, e, n, 2 * half)
    })
}

fn all_bounds(c: &Case, l: usize) -> Vec<(TheoremId, Option<i64>)> {
    [bound_th1(c), bound_th2(c, l), bound_th3(c), bound_th4(c), max_insertion_degree(c).verdict]
        .iter()
        .map(|v| (v.theorem_id, bound(v)))
        .collect()
}

proptest! {
    #[test]
    fn verdicts_are_well_formed((b2, b1, e, n, d) in params(), l in 0usize..=10) {
        let c = case(b2, b1, e, n, d);
        let r = best_bound(&c, Some(l)).unwrap();
        prop_assert_eq!(r.verdicts.len(), 5);
        for v in &r.verdicts {
            prop_assert_eq!(v.applicable, v.genus_lower_bound.is_some());
            prop_assert_eq!(v.applicable, v.failed_hypotheses.is_empty());
            prop_assert_eq!(v.applicable, v.lhs.is_some());
            if let Some(g) = bound(v) {
                prop_assert!(g >= 1);
            }
        }
        let max = r.verdicts.iter().filter_map(bound).max();
        prop_assert_eq!(r.best_bound.map(|b| i64::try_from(&b).unwrap()), max);
    }

    #[test]
    fn b1_zero_bounds_coincide(b2 in 2usize..=3, e in -20i64..=0, n in 0i64..=20, half in 0i64..=10) {
        let e = if wu_parity_check(&int(e), &int(n)) { e } else { e - 1 };
        let c = case(b2, 0, e, n, 2 * half);
        let (t1, t3, t4) = (bound_th1(&c), bound_th3(&c), bound_th4(&c));
        prop_assert!(t1.applicable && t3.applicable && t4.applicable);
        prop_assert_eq!(bound(&t1), bound(&t3));
        prop_assert_eq!(bound(&t4), bound(&t3));
    }

    #[test]
    fn bounds_are_monotone((b2, b1, e, n, d) in params(), which in 0usize..3, l in 0usize..=10) {
        let c = case(b2, b1, e, n, d);
        // Grow |e| (away from zero, and only downward when b2_plus = 1), n or d by 2.
        let bigger = match which {
            0 if b2 > 1 => case(b2, b1, if e >= 0 { e + 2 } else { e - 2 }, n, d),
            0 => case(b2, b1, e - 2, n, d),
            1 => case(b2, b1, e, n + 2, d),
            _ => case(b2, b1, e, n, d + 2),
        };
        // th2 may cross into its high-degree branch, which is a different verdict.
        for ((id0, before), (id1, after)) in all_bounds(&c, l).into_iter().zip(all_bounds(&bigger, l)) {
            if let (true, Some(x), Some(y)) = (id0 == id1, before, after) {
                prop_assert!(y >= x, "{} -> {}", x, y);
            }
        }
    }

    #[test]
    fn orientation_does_not_matter((b1, e, n, d) in (0usize..=5, -20i64..=20, 0i64..=20, 0i64..=15), b2 in 2usize..=3, l in 0usize..=10) {
        let e = if wu_parity_check(&int(e), &int(n)) { e } else { e + 1 };
        let c = case(b2, b1, e, n, 2 * d);
        let flipped = case(b2, b1, -e, n, 2 * d);
        prop_assert_eq!(best_bound(&c, Some(l)).unwrap().best_bound, best_bound(&flipped, Some(l)).unwrap().best_bound);
        let (norm, changed) = normalize_orientation(&c).unwrap();
        prop_assert_eq!(changed, e > 0);
        prop_assert!(norm.spinc.pairing_e <= int(0));
    }

    #[test]
    fn pinned_chamber_uses_signed_pairing(b1 in 0usize..=4, e in 1i64..=20, n in 0i64..=20, half in 0i64..=8) {
        let e = if wu_parity_check(&int(e), &int(n)) { e } else { e + 1 };
        prop_assume!(n - e < 0);
        let c = case(1, b1, e, n, 2 * half);
        let r = best_bound(&c, None).unwrap();
        prop_assert!(r.verdicts.iter().all(|v| !v.applicable), "{:?}", r.verdicts);
        prop_assert_eq!(r.best_bound, None);
        prop_assert!(matches!(normalize_orientation(&c), Err(Error::Forbidden(_))));
    }

    #[test]
    fn high_degree_branch_switches_at_l((b2, b1, e, n, d) in params(), l in 0usize..=15) {
        let c = case(b2, b1, e, n, d);
        let v = bound_th2(&c, l);
        let expected = if (d as usize) <= l { TheoremId::Th2 } else { TheoremId::Th2HighDegree };
        prop_assert_eq!(v.theorem_id, expected);
        if v.applicable {
            let high = expected == TheoremId::Th2HighDegree;
            let base = lhs(&bound_th3(&raw_case(b2, 0, 10, e, n, d, c.insertion))).unwrap() - 2 * d;
            prop_assert_eq!(lhs(&v).unwrap(), base + if high { d } else { 2 * d });
        }
    }

    #[test]
    fn blowing_up_n_times_dominates(
        b2 in 1usize..=3, (b1, n) in (0usize..=6).prop_flat_map(|b1| (Just(b1), 0..=b1 as i64)),
        extra_e in 0i64..=10, extra_d in 0i64..=6, flip in any::<bool>(),
    ) {
        let d = 2 * (n + extra_d);
        // e <= 0 with the gate |e| + 3n >= 2 b1 and Wu parity.
        let mut e = -((2 * b1 as i64 - 3 * n).max(0) + extra_e);
        if (e + n).rem_euclid(2) != 0 { e -= 1; }
        let e = if flip && b2 > 1 { -e } else { e };
        let c = case(b2, b1, e, n, d);
        let p = lemma41_pathway(&c).unwrap();
        prop_assert_eq!(p.r as i64, n);
        prop_assert_eq!(&p.transformed.surface.self_int, &int(0));
        prop_assert!(p.transformed.d_s >= int(0));
        prop_assert!(p.th4.applicable);
        prop_assert!(p.th3_on_transform.applicable, "{:?}", p.th3_on_transform);
        let slack = 2 * (b1 as i64 - n);
        prop_assert_eq!(lhs(&p.th3_on_transform).unwrap(), lhs(&p.th4).unwrap() + slack);
        prop_assert!(bound(&p.th3_on_transform).unwrap() >= bound(&p.th4).unwrap());
    }

    #[test]
    fn blowing_up_b1_times_matches(
        b2 in 1usize..=3, b1 in 0usize..=6, extra_n in 0i64..=8, extra_d in 0i64..=6, extra_e in 0i64..=10, flip in any::<bool>(),
    ) {
        let n = b1 as i64 + extra_n;
        let d = 2 * (b1 as i64 + extra_d);
        let mut e = -extra_e;
        if (e + n).rem_euclid(2) != 0 { e -= 1; }
        let e = if flip && b2 > 1 { -e } else { e };
        let c = case(b2, b1, e, n, d);
        let p = lemma42_pathway(&c).unwrap();
        prop_assert!(p.transformed.surface.self_int >= int(0));
        prop_assert!(p.transformed.d_s >= int(0));
        prop_assert!(p.th4.applicable && p.th3_on_transform.applicable);
        prop_assert_eq!(lhs(&p.th3_on_transform), lhs(&p.th4));
        prop_assert_eq!(bound(&p.th3_on_transform), bound(&p.th4));
    }
}

#[test]
fn side_conditions_are_enforced() {
    // n = 3 > b1 = 1
    assert!(matches!(lemma41_pathway(&case(2, 1, -1, 3, 8)), Err(Error::Precondition(_))));
    // b1 = 3 > n = 1
    assert!(matches!(lemma42_pathway(&case(2, 3, -1, 1, 8)), Err(Error::Precondition(_))));
}
