//! Seeded property suites behind `--self-check`. Each suite is a smaller run
//! of the corresponding integration property test, so a deployed binary can
//! re-verify itself without the test harness.

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{exhaustive_l, random_symplectic_basis, replay};
use crate::reduction::{
    complete_primitive, l_invariant, l_lower_bound_constructive, referee_bound, EmbeddingMap, PrimitiveAVector,
};
use crate::scalar::content;
use crate::swtopology::{blow_up, d_invariant, wu_parity_check, BlowUpSpec, Chamber, ManifoldData, SpinCData, SurfaceData};
use crate::symplattice::{verify_basis, BasisCheck};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: Vec<String>, total: usize) -> CheckResult {
    let detail = match failures.first() {
        None => format!("{total} cases"),
        Some(f) => format!("{} of {total} failed; first: {f}", failures.len()),
    };
    CheckResult { name, passed: failures.is_empty(), detail }
}

fn symplectic_words(rng: &mut ChaCha8Rng) -> CheckResult {
    let total = 500;
    let failures = (0..total)
        .filter_map(|_| {
            let g = rng.gen_range(1..=6);
            let seed = rng.gen();
            let b = random_symplectic_basis::<BigInt>(g, 20, seed);
            match verify_basis(&b) {
                BasisCheck::Symplectic => None,
                v => Some(format!("g={g} seed={seed}: {v:?}")),
            }
        })
        .collect();
    check("symplectic_words", failures, total)
}

fn primitive_descent(rng: &mut ChaCha8Rng) -> CheckResult {
    let total = 300;
    let mut failures = Vec::new();
    for _ in 0..total {
        let g = rng.gen_range(1..=6);
        let mut coeffs: Vec<i64> = (0..g).map(|_| rng.gen_range(-50..=50)).collect();
        if content(&coeffs) != 1 {
            coeffs[0] = 1;
        }
        let v = PrimitiveAVector::new(coeffs.iter().map(|&c| BigInt::from(c)).collect()).expect("content 1");
        let outcome = complete_primitive(&v).and_then(|t| {
            replay(&t)?;
            let decreasing = t.metrics.windows(2).all(|w| w[0].precedes(&w[1]));
            Ok(decreasing && t.final_basis.a(0) == &v.to_vector())
        });
        if !matches!(outcome, Ok(true)) {
            failures.push(format!("{coeffs:?}: {outcome:?}"));
        }
    }
    check("primitive_descent", failures, total)
}

fn l_three_way(rng: &mut ChaCha8Rng) -> CheckResult {
    let total = 12;
    let mut failures = Vec::new();
    for _ in 0..total {
        let g = rng.gen_range(1..=2);
        let b1 = rng.gen_range(0..=2);
        let rows: Vec<Vec<BigInt>> =
            (0..b1).map(|_| (0..2 * g).map(|_| BigInt::from(rng.gen_range(-1..=1))).collect()).collect();
        let e = EmbeddingMap::from_integers(g, b1, rows.clone()).expect("shape is right");
        let l = l_invariant(&e);
        let cons = l_lower_bound_constructive(&e).map(|c| c.l);
        let search = exhaustive_l(&e, 6);
        if cons != Ok(l) || (search.stabilized && search.best != l) || search.best > l {
            failures.push(format!("{rows:?}: l={l} constructive={cons:?} search={}", search.best));
        }
    }
    check("l_three_way", failures, total)
}

fn l_referee(rng: &mut ChaCha8Rng) -> CheckResult {
    let total = 200;
    let mut failures = Vec::new();
    for _ in 0..total {
        let g = rng.gen_range(1..=6);
        let b1 = rng.gen_range(0..=6);
        let rows = (0..b1)
            .map(|_| {
                (0..2 * g)
                    .map(|_| Ratio::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=5))))
                    .collect()
            })
            .collect();
        let e = EmbeddingMap::new(g, b1, rows).expect("shape is right");
        let l = l_invariant(&e);
        if l < referee_bound(g, b1) || l > g {
            failures.push(format!("g={g} b1={b1}: l={l}"));
        }
    }
    check("l_referee", failures, total)
}

fn blowup_algebra(rng: &mut ChaCha8Rng) -> CheckResult {
    let total = 300;
    let mut failures = Vec::new();
    for _ in 0..total {
        let d = BigInt::from(rng.gen_range(-10..=40));
        let chi = BigInt::from(rng.gen_range(-20..=60));
        let tau = BigInt::from(rng.gen_range(-30..=30));
        let c1 = &d * 4 + &chi * 2 + &tau * 3;
        let n = BigInt::from(rng.gen_range(-20..=20));
        let e = BigInt::from(rng.gen_range(-20..=20)) * 2 + (&n % 2);
        let m = ManifoldData::new(rng.gen_range(0..=4), rng.gen_range(1..=3), Some(chi), Some(tau)).expect("b2+ >= 1");
        let s = SurfaceData::new(rng.gen_range(1..=8), n, true, None).expect("genus >= 1");
        let sp = SpinCData { name: "s".into(), c1_square: Some(c1), pairing_e: e, sw_nonvanishing: true, chamber: Chamber::PdSigma };
        let (r1, r2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let once = blow_up(&m, &s, &sp, &d, BlowUpSpec { r: r1 + r2 });
        let first = blow_up(&m, &s, &sp, &d, BlowUpSpec { r: r1 });
        let twice = blow_up(&first.manifold, &first.surface, &first.spinc, &first.d, BlowUpSpec { r: r2 });
        let recomputed = d_invariant(
            once.spinc.c1_square.as_ref().expect("kept"),
            once.manifold.chi.as_ref().expect("kept"),
            once.manifold.tau.as_ref().expect("kept"),
        );
        let parity = wu_parity_check(&once.spinc.pairing_e, &once.surface.self_int);
        if once != twice || recomputed.as_ref() != Ok(&once.d) || !parity {
            failures.push(format!("d={d} r1={r1} r2={r2}"));
        }
    }
    check("blowup_algebra", failures, total)
}

/// Runs every suite from one seed.
pub fn run(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        symplectic_words(&mut rng),
        primitive_descent(&mut rng),
        l_three_way(&mut rng),
        l_referee(&mut rng),
        blowup_algebra(&mut rng),
    ]
}
