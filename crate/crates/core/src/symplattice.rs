//! Rank-2g integral symplectic lattices.
//!
//! Vectors are coordinates against a fixed reference basis
//! `A_1..A_g, B_1..B_g`, stored A-block first. The standard form is
//! `ω(u, v) = Σ_i (u_i v_{g+i} - u_{g+i} v_i)`, so the reference basis itself
//! is symplectic: `ω(A_i, B_j) = δ_ij` and both blocks are isotropic.
//!
//! A [`SymplecticBasis`] is a list of `2g` such vectors, and every basis change
//! in this module is a pure function returning a new basis. Indices are
//! zero-based throughout; [`Slot`] renders them one-based (`A1`, `B3`, ...).

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{bezout, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVector<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> SymplecticVector<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() % 2 != 0 {
            return Err(Error::Precondition(format!(
                "a symplectic vector needs 2g >= 2 coordinates, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(genus: usize) -> Self {
        Self { coeffs: vec![T::zero(); 2 * genus] }
    }

    /// The reference vector `A_i`.
    pub fn a(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coeffs[i] = T::one();
        v
    }

    /// The reference vector `B_i`.
    pub fn b(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coeffs[genus + i] = T::one();
        v
    }

    /// `Σ a_i A_i` for the given A-span coefficients.
    pub fn from_a_part(a: &[T]) -> Self {
        let mut coeffs = a.to_vec();
        coeffs.extend(std::iter::repeat_with(T::zero).take(a.len()));
        Self { coeffs }
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn a_part(&self) -> &[T] {
        &self.coeffs[..self.genus()]
    }

    pub fn b_part(&self) -> &[T] {
        &self.coeffs[self.genus()..]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `c * self + d * other`.
    pub fn combine(&self, c: &T, other: &Self, d: &T) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| c.clone() * x.clone() + d.clone() * y.clone())
            .collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| -x.clone()).collect() }
    }
}

impl<T: Scalar> fmt::Display for SymplecticVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", if i == self.genus() { " | " } else { ", " })?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Evaluates the standard symplectic form on two vectors of length `2 * genus`.
pub fn form_eval<T: Scalar>(u: &SymplecticVector<T>, v: &SymplecticVector<T>, genus: usize) -> Result<T> {
    for w in [u, v] {
        if w.coeffs.len() != 2 * genus {
            return Err(Error::DimensionMismatch { expected: 2 * genus, found: w.coeffs.len() });
        }
    }
    Ok(standard_form(&u.coeffs, &v.coeffs))
}

pub(crate) fn standard_form<T: Scalar>(u: &[T], v: &[T]) -> T {
    let g = u.len() / 2;
    (0..g).fold(T::zero(), |acc, i| {
        acc + u[i].clone() * v[g + i].clone() - u[g + i].clone() * v[i].clone()
    })
}

/// Position of a vector inside a symplectic basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    A(usize),
    B(usize),
}

impl Slot {
    fn of(genus: usize, position: usize) -> Self {
        if position < genus {
            Slot::A(position)
        } else {
            Slot::B(position - genus)
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::A(i) => write!(f, "A{}", i + 1),
            Slot::B(i) => write!(f, "B{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisCheck<T> {
    Symplectic,
    Violation { left: Slot, right: Slot, expected: T, found: T },
}

impl<T> BasisCheck<T> {
    pub fn is_symplectic(&self) -> bool {
        matches!(self, BasisCheck::Symplectic)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticBasis<T> {
    genus: usize,
    vectors: Vec<SymplecticVector<T>>,
}

impl<T: Scalar> SymplecticBasis<T> {
    pub fn identity(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        let vectors = (0..genus)
            .map(|i| SymplecticVector::a(genus, i))
            .chain((0..genus).map(|i| SymplecticVector::b(genus, i)))
            .collect();
        Self { genus, vectors }
    }

    /// Wraps `2g` vectors ordered `A_1..A_g, B_1..B_g`. Symplecticity is not
    /// checked here; see [`verify_basis`].
    pub fn from_vectors(genus: usize, vectors: Vec<SymplecticVector<T>>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Precondition("genus must be positive".into()));
        }
        if vectors.len() != 2 * genus {
            return Err(Error::DimensionMismatch { expected: 2 * genus, found: vectors.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.coeffs.len() != 2 * genus) {
            return Err(Error::DimensionMismatch { expected: 2 * genus, found: v.coeffs.len() });
        }
        Ok(Self { genus, vectors })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn vectors(&self) -> &[SymplecticVector<T>] {
        &self.vectors
    }

    pub fn a(&self, i: usize) -> &SymplecticVector<T> {
        &self.vectors[i]
    }

    pub fn b(&self, i: usize) -> &SymplecticVector<T> {
        &self.vectors[self.genus + i]
    }

    pub fn a_vectors(&self) -> &[SymplecticVector<T>] {
        &self.vectors[..self.genus]
    }

    pub fn get(&self, slot: Slot) -> &SymplecticVector<T> {
        match slot {
            Slot::A(i) => self.a(i),
            Slot::B(i) => self.b(i),
        }
    }

    fn set_a(&mut self, i: usize, v: SymplecticVector<T>) {
        self.vectors[i] = v;
    }

    fn set_b(&mut self, i: usize, v: SymplecticVector<T>) {
        let g = self.genus;
        self.vectors[g + i] = v;
    }

    /// Column `c` holds the reference coordinates of basis vector `c`, so the
    /// basis is symplectic iff `Mᵀ J M = J`.
    pub fn coordinate_matrix(&self) -> Vec<Vec<T>> {
        let n = 2 * self.genus;
        (0..n)
            .map(|row| (0..n).map(|col| self.vectors[col].coeffs[row].clone()).collect())
            .collect()
    }

    pub fn determinant(&self) -> T {
        linalg::determinant(&self.coordinate_matrix())
    }

    /// Expresses `coords` (given in this basis) in reference coordinates.
    pub fn to_reference(&self, coords: &[T]) -> SymplecticVector<T> {
        let mut out = SymplecticVector::zero(self.genus);
        for (c, v) in coords.iter().zip(&self.vectors) {
            if !c.is_zero() {
                out = out.combine(&T::one(), v, c);
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for SymplecticBasis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, v) in self.vectors.iter().enumerate() {
            writeln!(f, "{:>4} = {v}", Slot::of(self.genus, p).to_string())?;
        }
        Ok(())
    }
}

/// Checks all `4g²` pairings against the standard form, reporting the first
/// offending pair in row-major order over `A_1..A_g, B_1..B_g`.
pub fn verify_basis<T: Scalar>(b: &SymplecticBasis<T>) -> BasisCheck<T> {
    let g = b.genus;
    for x in 0..2 * g {
        for y in 0..2 * g {
            let expected = if x < g && y == x + g {
                T::one()
            } else if x >= g && y + g == x {
                -T::one()
            } else {
                T::zero()
            };
            let found = standard_form(&b.vectors[x].coeffs, &b.vectors[y].coeffs);
            if found != expected {
                return BasisCheck::Violation {
                    left: Slot::of(g, x),
                    right: Slot::of(g, y),
                    expected,
                    found,
                };
            }
        }
    }
    BasisCheck::Symplectic
}

fn check_index(genus: usize, name: &str, i: usize) -> Result<()> {
    if i >= genus {
        return Err(Error::InvalidIndices(format!("{name} = {i} out of range for genus {genus}")));
    }
    Ok(())
}

/// `A_i' = A_i - r A_k`, `A_j' = A_j - s A_k`, `B_k' = B_k + r B_i + s B_j`.
pub fn lemma21_change<T: Scalar>(
    b: &SymplecticBasis<T>,
    i: usize,
    j: usize,
    k: usize,
    r: &T,
    s: &T,
) -> Result<SymplecticBasis<T>> {
    let g = b.genus;
    check_index(g, "i", i)?;
    check_index(g, "j", j)?;
    check_index(g, "k", k)?;
    if i == j || j == k || i == k {
        return Err(Error::InvalidIndices(format!(
            "indices ({i}, {j}, {k}) must be pairwise distinct"
        )));
    }
    let one = T::one();
    let mut out = b.clone();
    out.set_a(i, b.a(i).combine(&one, b.a(k), &-r.clone()));
    out.set_a(j, b.a(j).combine(&one, b.a(k), &-s.clone()));
    out.set_b(k, b.b(k).combine(&one, b.b(i), r).combine(&one, b.b(j), s));
    Ok(out)
}

/// Deterministic Bezout pair `(p, q)` with `p a_m + q a_n = 1`.
///
/// When `a_n ≠ 0`, `p` is the least non-negative residue of `a_m⁻¹ mod |a_n|`;
/// when `a_n = 0` (so `a_m = ±1`), `(p, q) = (a_m, 0)`.
pub fn canonical_bezout<T: Scalar>(a_m: &T, a_n: &T) -> Result<(T, T)> {
    let (d, x, _) = bezout(a_m, a_n);
    if !d.is_one() {
        return Err(Error::Precondition(format!("gcd({a_m}, {a_n}) = {d}, expected 1")));
    }
    if a_n.is_zero() {
        return Ok((a_m.clone(), T::zero()));
    }
    let p = x.mod_floor(&a_n.abs());
    let q = (T::one() - p.clone() * a_m.clone()) / a_n.clone();
    Ok((p, q))
}

/// Replaces the pairs at `m`, `n` so that `A_m'` becomes `a_m A_m + a_n A_n`,
/// using the canonical Bezout coefficients.
pub fn pair_completion<T: Scalar>(
    b: &SymplecticBasis<T>,
    m: usize,
    n: usize,
    a_m: &T,
    a_n: &T,
) -> Result<SymplecticBasis<T>> {
    let (p, q) = canonical_bezout(a_m, a_n)?;
    pair_completion_with(b, m, n, a_m, a_n, &p, &q)
}

/// As [`pair_completion`] with caller-supplied `(p, q)`; rejects any pair
/// that is not a Bezout identity for `(a_m, a_n)`.
pub fn pair_completion_with<T: Scalar>(
    b: &SymplecticBasis<T>,
    m: usize,
    n: usize,
    a_m: &T,
    a_n: &T,
    p: &T,
    q: &T,
) -> Result<SymplecticBasis<T>> {
    let g = b.genus;
    check_index(g, "m", m)?;
    check_index(g, "n", n)?;
    if m == n {
        return Err(Error::InvalidIndices(format!("m = n = {m}")));
    }
    if !(p.clone() * a_m.clone() + q.clone() * a_n.clone()).is_one() {
        return Err(Error::Precondition(format!(
            "({p})({a_m}) + ({q})({a_n}) != 1"
        )));
    }
    let mut out = b.clone();
    out.set_a(m, b.a(m).combine(a_m, b.a(n), a_n));
    out.set_b(m, b.b(m).combine(p, b.b(n), q));
    out.set_a(n, b.a(n).combine(p, b.a(m), &-q.clone()));
    out.set_b(n, b.b(n).combine(a_m, b.b(m), &-a_n.clone()));
    Ok(out)
}

/// `(A_i, B_i) -> (-A_i, -B_i)`.
pub fn sign_flip<T: Scalar>(b: &SymplecticBasis<T>, i: usize) -> Result<SymplecticBasis<T>> {
    check_index(b.genus, "slot", i)?;
    let mut out = b.clone();
    out.set_a(i, b.a(i).neg());
    out.set_b(i, b.b(i).neg());
    Ok(out)
}

/// Exchanges the symplectic pairs `(A_i, B_i)` and `(A_j, B_j)`.
pub fn swap_pairs<T: Scalar>(b: &SymplecticBasis<T>, i: usize, j: usize) -> Result<SymplecticBasis<T>> {
    check_index(b.genus, "i", i)?;
    check_index(b.genus, "j", j)?;
    let mut out = b.clone();
    let g = b.genus;
    out.vectors.swap(i, j);
    out.vectors.swap(g + i, g + j);
    Ok(out)
}

/// An `SL(2, Z)` change inside one pair: `A_i' = a A_i + c B_i`,
/// `B_i' = -y A_i + x B_i`, valid when `a x + c y = 1`.
pub fn pair_rotation<T: Scalar>(
    b: &SymplecticBasis<T>,
    i: usize,
    a: &T,
    c: &T,
    x: &T,
    y: &T,
) -> Result<SymplecticBasis<T>> {
    check_index(b.genus, "slot", i)?;
    if !(a.clone() * x.clone() + c.clone() * y.clone()).is_one() {
        return Err(Error::Precondition(format!("({a})({x}) + ({c})({y}) != 1")));
    }
    let mut out = b.clone();
    out.set_a(i, b.a(i).combine(a, b.b(i), c));
    out.set_b(i, b.a(i).combine(&-y.clone(), b.b(i), x));
    Ok(out)
}

/// Symmetric transvection: `A_i += t B_j` and `A_j += t B_i` (for `i = j`,
/// simply `A_i += t B_i`).
pub fn transvection<T: Scalar>(b: &SymplecticBasis<T>, i: usize, j: usize, t: &T) -> Result<SymplecticBasis<T>> {
    check_index(b.genus, "i", i)?;
    check_index(b.genus, "j", j)?;
    let one = T::one();
    let mut out = b.clone();
    out.set_a(i, b.a(i).combine(&one, b.b(j), t));
    if i != j {
        out.set_a(j, b.a(j).combine(&one, b.b(i), t));
    }
    Ok(out)
}

/// `A_i += t A_j`, `B_j -= t B_i` for `i ≠ j`.
pub fn shear<T: Scalar>(b: &SymplecticBasis<T>, i: usize, j: usize, t: &T) -> Result<SymplecticBasis<T>> {
    check_index(b.genus, "i", i)?;
    check_index(b.genus, "j", j)?;
    if i == j {
        return Err(Error::InvalidIndices(format!("shear needs i != j, got {i}")));
    }
    let one = T::one();
    let mut out = b.clone();
    out.set_a(i, b.a(i).combine(&one, b.a(j), t));
    out.set_b(j, b.b(j).combine(&one, b.b(i), &-t.clone()));
    Ok(out)
}

/// One elementary basis change, replayable against any basis of matching genus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisChange<T> {
    Lemma21 { i: usize, j: usize, k: usize, r: T, s: T },
    PairCompletion { m: usize, n: usize, a_m: T, a_n: T, p: T, q: T },
    SignFlip { slot: usize },
    Swap { i: usize, j: usize },
    PairRotation { slot: usize, a: T, c: T, x: T, y: T },
    Transvection { i: usize, j: usize, t: T },
    Shear { i: usize, j: usize, t: T },
}

impl<T: Scalar> BasisChange<T> {
    pub fn apply(&self, b: &SymplecticBasis<T>) -> Result<SymplecticBasis<T>> {
        match self {
            BasisChange::Lemma21 { i, j, k, r, s } => lemma21_change(b, *i, *j, *k, r, s),
            BasisChange::PairCompletion { m, n, a_m, a_n, p, q } => pair_completion_with(b, *m, *n, a_m, a_n, p, q),
            BasisChange::SignFlip { slot } => sign_flip(b, *slot),
            BasisChange::Swap { i, j } => swap_pairs(b, *i, *j),
            BasisChange::PairRotation { slot, a, c, x, y } => pair_rotation(b, *slot, a, c, x, y),
            BasisChange::Transvection { i, j, t } => transvection(b, *i, *j, t),
            BasisChange::Shear { i, j, t } => shear(b, *i, *j, t),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BasisChange::Lemma21 { .. } => "lemma21",
            BasisChange::PairCompletion { .. } => "pair_completion",
            BasisChange::SignFlip { .. } => "sign_flip",
            BasisChange::Swap { .. } => "swap",
            BasisChange::PairRotation { .. } => "pair_rotation",
            BasisChange::Transvection { .. } => "transvection",
            BasisChange::Shear { .. } => "shear",
        }
    }

    /// Shifts every slot index by `offset`, for embedding a change computed on
    /// a lower-genus block into a larger basis.
    pub fn shifted(&self, offset: usize) -> Self {
        let mut c = self.clone();
        match &mut c {
            BasisChange::Lemma21 { i, j, k, .. } => {
                *i += offset;
                *j += offset;
                *k += offset;
            }
            BasisChange::PairCompletion { m, n, .. } => {
                *m += offset;
                *n += offset;
            }
            BasisChange::SignFlip { slot } | BasisChange::PairRotation { slot, .. } => *slot += offset,
            BasisChange::Swap { i, j } | BasisChange::Transvection { i, j, .. } | BasisChange::Shear { i, j, .. } => {
                *i += offset;
                *j += offset;
            }
        }
        c
    }
}

impl<T: Scalar> fmt::Display for BasisChange<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisChange::Lemma21 { i, j, k, r, s } => {
                write!(f, "lemma21(i={}, j={}, k={}, r={r}, s={s})", i + 1, j + 1, k + 1)
            }
            BasisChange::PairCompletion { m, n, a_m, a_n, p, q } => write!(
                f,
                "pair_completion(m={}, n={}, a=({a_m}, {a_n}), p={p}, q={q})",
                m + 1,
                n + 1
            ),
            BasisChange::SignFlip { slot } => write!(f, "sign_flip({})", slot + 1),
            BasisChange::Swap { i, j } => write!(f, "swap({}, {})", i + 1, j + 1),
            BasisChange::PairRotation { slot, a, c, x, y } => {
                write!(f, "pair_rotation({}, [{a} {c}; {} {x}])", slot + 1, -y.clone())
            }
            BasisChange::Transvection { i, j, t } => write!(f, "transvection({}, {}, t={t})", i + 1, j + 1),
            BasisChange::Shear { i, j, t } => write!(f, "shear({}, {}, t={t})", i + 1, j + 1),
        }
    }
}
