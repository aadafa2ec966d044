//! Brute-force instruments used to check the constructive algorithms:
//! seeded random symplectic bases, a bounded breadth-first search for `l(Σ)`
//! over words in elementary moves, and exact trace replay.
//!
//! Nothing here calls into [`crate::reduction`] except to read trace steps.

use std::collections::HashSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::reduction::{EmbeddingMap, ReductionTrace};
use crate::scalar::{bezout, Scalar};
use crate::symplattice::{canonical_bezout, verify_basis, BasisChange, SymplecticBasis, SymplecticVector};

/// A word in elementary moves together with the seed that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord<T> {
    pub genus: usize,
    pub letters: Vec<BasisChange<T>>,
    pub seed: u64,
}

impl<T: Scalar> GeneratorWord<T> {
    pub fn replay(&self) -> Result<SymplecticBasis<T>> {
        self.letters
            .iter()
            .try_fold(SymplecticBasis::identity(self.genus), |b, mv| mv.apply(&b))
    }
}

fn small<T: Scalar>(rng: &mut ChaCha8Rng, bound: i64) -> T {
    T::from_int(rng.gen_range(-bound..=bound))
}

fn random_move<T: Scalar>(rng: &mut ChaCha8Rng, g: usize) -> BasisChange<T> {
    loop {
        let kind = rng.gen_range(0..7);
        let i = rng.gen_range(0..g);
        let j = rng.gen_range(0..g);
        match kind {
            0 if g >= 3 => {
                let k = rng.gen_range(0..g);
                if i != j && j != k && i != k {
                    return BasisChange::Lemma21 { i, j, k, r: small(rng, 3), s: small(rng, 3) };
                }
            }
            1 if g >= 2 && i != j => {
                let (a_m, a_n): (T, T) = (small(rng, 5), small(rng, 5));
                if let Ok((p, q)) = canonical_bezout(&a_m, &a_n) {
                    return BasisChange::PairCompletion { m: i, n: j, a_m, a_n, p, q };
                }
            }
            2 => return BasisChange::SignFlip { slot: i },
            3 if i != j => return BasisChange::Swap { i, j },
            4 => {
                let (a, c): (T, T) = (small(rng, 4), small(rng, 4));
                let (d, x, y) = bezout(&a, &c);
                if d.is_one() {
                    return BasisChange::PairRotation { slot: i, a, c, x, y };
                }
            }
            5 => return BasisChange::Transvection { i, j, t: small(rng, 3) },
            6 if i != j => return BasisChange::Shear { i, j, t: small(rng, 3) },
            _ => {}
        }
    }
}

/// Deterministic word of `steps` random elementary moves in genus `g`.
pub fn random_word<T: Scalar>(genus: usize, steps: usize, seed: u64) -> GeneratorWord<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..steps).map(|_| random_move(&mut rng, genus)).collect();
    GeneratorWord { genus, letters, seed }
}

/// Product of `steps` random elementary moves applied to the identity.
pub fn random_symplectic_basis<T: Scalar>(genus: usize, steps: usize, seed: u64) -> SymplecticBasis<T> {
    random_word(genus, steps, seed)
        .replay()
        .expect("generated moves are valid by construction")
}

/// Replays a reduction trace from the identity and demands an exact match.
pub fn replay<T: Scalar>(trace: &ReductionTrace<T>) -> Result<SymplecticBasis<T>> {
    let mut b = SymplecticBasis::identity(trace.genus());
    for (n, step) in trace.steps.iter().enumerate() {
        b = step
            .apply(&b)
            .map_err(|e| Error::CorruptTrace(format!("step {} ({step}) is invalid: {e}", n + 1)))?;
    }
    if b != trace.final_basis {
        return Err(Error::CorruptTrace("replayed basis differs from the recorded final basis".into()));
    }
    Ok(b)
}

/// The unit-parameter generators explored by [`exhaustive_l`].
pub fn search_moves<T: Scalar>(genus: usize) -> Vec<BasisChange<T>> {
    let one = T::one();
    let signs = [one.clone(), -one.clone()];
    let mut moves = Vec::new();
    for slot in 0..genus {
        // (A, B) -> (B, -A) and its inverse
        moves.push(BasisChange::PairRotation { slot, a: T::zero(), c: one.clone(), x: T::zero(), y: one.clone() });
        moves.push(BasisChange::PairRotation { slot, a: T::zero(), c: -one.clone(), x: T::zero(), y: -one.clone() });
    }
    for i in 0..genus {
        for j in i..genus {
            for t in &signs {
                moves.push(BasisChange::Transvection { i, j, t: t.clone() });
            }
        }
    }
    for i in 0..genus {
        for j in (0..genus).filter(|&j| j != i) {
            for t in &signs {
                moves.push(BasisChange::Shear { i, j, t: t.clone() });
            }
            for a_n in &signs {
                let (p, q) = canonical_bezout(&one, a_n).expect("unit coefficients are coprime");
                moves.push(BasisChange::PairCompletion { m: i, n: j, a_m: one.clone(), a_n: a_n.clone(), p, q });
            }
        }
    }
    for i in 0..genus {
        for j in i + 1..genus {
            for k in (0..genus).filter(|&k| k != i && k != j) {
                for r in &signs {
                    for s in &signs {
                        moves.push(BasisChange::Lemma21 { i, j, k, r: r.clone(), s: s.clone() });
                    }
                }
            }
        }
    }
    moves
}

/// Outcome of the bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveL {
    /// Largest number of A-vectors found inside `ker i_*` (a lower bound on `l`).
    pub best: usize,
    /// Best value after each completed depth, starting at depth 0.
    pub best_by_depth: Vec<usize>,
    /// Two consecutive depth increments brought no improvement, or `best`
    /// hit the trivial ceiling `min(g, dim ker i_*)`.
    pub stabilized: bool,
    /// False when the state cap stopped the search before `move_budget`.
    pub complete: bool,
    pub states: usize,
}

pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// Pair order and the overall sign of each pair do not change how many
/// A-vectors lie in the kernel, so states are identified up to both.
fn canonical<T: Scalar>(b: &SymplecticBasis<T>) -> Vec<Vec<T>> {
    let g = b.genus();
    let mut pairs: Vec<Vec<T>> = (0..g)
        .map(|i| {
            let (a, bb) = (b.a(i), b.b(i));
            let negate = a.coeffs().iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
            a.coeffs()
                .iter()
                .chain(bb.coeffs())
                .map(|x| if negate { -x.clone() } else { x.clone() })
                .collect()
        })
        .collect();
    pairs.sort();
    pairs
}

fn from_canonical<T: Scalar>(g: usize, pairs: &[Vec<T>]) -> SymplecticBasis<T> {
    let (mut a, mut b) = (Vec::with_capacity(g), Vec::with_capacity(g));
    for p in pairs {
        a.push(SymplecticVector::new(p[..2 * g].to_vec()).expect("even length"));
        b.push(SymplecticVector::new(p[2 * g..].to_vec()).expect("even length"));
    }
    a.extend(b);
    SymplecticBasis::from_vectors(g, a).expect("canonical pairs rebuild a basis")
}

pub fn exhaustive_l<T: Scalar>(e: &EmbeddingMap<T>, move_budget: usize) -> ExhaustiveL {
    exhaustive_l_with_cap(e, move_budget, DEFAULT_STATE_CAP)
}

/// Breadth-first search over bases reachable from the identity by at most
/// `move_budget` moves from [`search_moves`].
pub fn exhaustive_l_with_cap<T: Scalar>(e: &EmbeddingMap<T>, move_budget: usize, state_cap: usize) -> ExhaustiveL {
    let g = e.genus();
    let int = e.integer_matrix();
    let ceiling = g.min(2 * g - linalg::rank(&int, 2 * g));
    let score = |b: &SymplecticBasis<T>| {
        b.a_vectors()
            .iter()
            .filter(|v| linalg::mat_vec(&int, v.coeffs()).iter().all(Zero::is_zero))
            .count()
    };
    let moves = search_moves::<T>(g);

    let start = SymplecticBasis::identity(g);
    let mut best = score(&start);
    let mut best_by_depth = vec![best];
    let mut seen: HashSet<Vec<Vec<T>>> = HashSet::new();
    seen.insert(canonical(&start));
    let mut frontier = vec![start];
    let mut complete = true;

    for _depth in 1..=move_budget {
        if best == ceiling {
            break;
        }
        let mut next = Vec::new();
        'expand: for b in &frontier {
            for mv in &moves {
                let nb = mv.apply(b).expect("search moves fit the genus");
                let key = canonical(&nb);
                if seen.contains(&key) {
                    continue;
                }
                best = best.max(score(&nb));
                seen.insert(key.clone());
                next.push(from_canonical(g, &key));
                if seen.len() >= state_cap {
                    complete = false;
                    break 'expand;
                }
            }
        }
        best_by_depth.push(best);
        if !complete || next.is_empty() {
            break;
        }
        frontier = next;
    }

    let d = best_by_depth.len();
    let stabilized = best == ceiling || (d >= 3 && best_by_depth[d - 1] == best_by_depth[d - 3]);
    debug_assert!(frontier.iter().all(|b| verify_basis(b).is_symplectic()));
    ExhaustiveL { best, best_by_depth, stabilized, complete, states: seen.len() }
}
