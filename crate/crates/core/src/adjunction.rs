//! Decision procedures for the adjunction inequalities.
//!
//! Every theorem is turned into a verdict: either the list of hypotheses that
//! fail for the case, or the smallest genus not excluded by the inequality
//! `LHS <= 2g - 2`, i.e. `g >= ceil((LHS + 2) / 2)` (clamped to `g >= 1`).
//!
//! Sign conventions: when `b2_plus > 1` the inequalities use `|e|`; when
//! `b2_plus = 1` the chamber is pinned to `PD[Σ]` and every occurrence of
//! `|e|` becomes `-e`. No absolute value is taken on that path.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduction::{l_invariant, referee_bound};
use crate::scalar::Scalar;
use crate::swtopology::{
    blow_up, sw_blowup_transfer, wu_parity_check, BlowUpSpec, Chamber, InsertionData, ManifoldData, SpinCData,
    SurfaceData,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionCase<T: Scalar> {
    pub manifold: ManifoldData<T>,
    pub surface: SurfaceData<T>,
    pub spinc: SpinCData<T>,
    /// Formal dimension `d(s)`.
    pub d_s: T,
    pub insertion: InsertionData,
}

impl<T: Scalar> AdjunctionCase<T> {
    pub fn new(
        manifold: ManifoldData<T>,
        surface: SurfaceData<T>,
        spinc: SpinCData<T>,
        d_s: T,
        insertion: InsertionData,
    ) -> Result<Self> {
        let c = Self { manifold, surface, spinc, d_s, insertion };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.manifold.b2_plus == 1 && self.spinc.chamber != Chamber::PdSigma {
            return Err(Error::Validation {
                rule: "chamber_required",
                message: "b2_plus = 1 requires the chamber containing PD[Σ] (chamber = \"pd_sigma\")".into(),
            });
        }
        if !wu_parity_check(&self.spinc.pairing_e, &self.surface.self_int) {
            return Err(Error::Validation {
                rule: "wu_parity",
                message: format!(
                    "|e| + n = |{}| + {} is odd",
                    self.spinc.pairing_e, self.surface.self_int
                ),
            });
        }
        if let Some(e) = &self.surface.embedding {
            if e.ambient_b1() != self.manifold.b1 {
                return Err(Error::DimensionMismatch { expected: self.manifold.b1, found: e.ambient_b1() });
            }
        }
        Ok(())
    }

    fn e(&self) -> &T {
        &self.spinc.pairing_e
    }

    fn n(&self) -> &T {
        &self.surface.self_int
    }

    fn b1(&self) -> T {
        T::from_count(self.manifold.b1)
    }

    /// `|e|` when `b2_plus > 1`, `-e` when `b2_plus = 1`.
    pub fn signed_pairing(&self) -> T {
        if self.manifold.b2_plus > 1 {
            self.e().abs()
        } else {
            -self.e().clone()
        }
    }

    /// Degree `d(b)` of the surface insertion.
    pub fn insertion_degree(&self) -> T {
        T::from_count(self.insertion.degree())
    }

    pub fn is_basic_insertion(&self) -> bool {
        !self.d_s.is_negative()
            && self.d_s.is_even()
            && self.d_s.to_usize().is_some_and(|d| self.insertion == InsertionData::u_power(d / 2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Th1,
    Th2,
    Th2HighDegree,
    Th3,
    Th4,
    Key,
}

impl TheoremId {
    pub fn label(&self) -> &'static str {
        match self {
            TheoremId::Th1 => "th1",
            TheoremId::Th2 => "th2",
            TheoremId::Th2HighDegree => "th2_high_degree",
            TheoremId::Th3 => "th3",
            TheoremId::Th4 => "th4",
            TheoremId::Key => "key",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `[Σ]·[Σ] >= 0`.
    SelfIntersectionNonnegative,
    NonTorsion,
    SwNonvanishing,
    /// Insertion is exactly `U^{d/2}` with `d` even.
    BasicClass,
    NegativeFormalDimension,
    /// `-e + n >= 0` (only when `b2_plus = 1`).
    ChamberPositivity,
    /// `|e| + n >= 2 b1` (signed `-e` when `b2_plus = 1`).
    B1Gate,
    /// `|e| + 3n >= 2 b1` (signed `-e` when `b2_plus = 1`).
    Th4Gate,
}

impl Hypothesis {
    pub fn label(&self) -> &'static str {
        match self {
            Hypothesis::SelfIntersectionNonnegative => "self_intersection_nonnegative",
            Hypothesis::NonTorsion => "non_torsion",
            Hypothesis::SwNonvanishing => "sw_nonvanishing",
            Hypothesis::BasicClass => "basic_class",
            Hypothesis::NegativeFormalDimension => "negative_formal_dimension",
            Hypothesis::ChamberPositivity => "chamber_positivity",
            Hypothesis::B1Gate => "b1_gate",
            Hypothesis::Th4Gate => "th4_gate",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict<T> {
    pub theorem_id: TheoremId,
    pub applicable: bool,
    pub failed_hypotheses: Vec<Hypothesis>,
    pub genus_lower_bound: Option<T>,
    /// The quantity bounded by `2g - 2` (for [`TheoremId::Key`]: `d(b) + b1`,
    /// bounded by `g`). Present iff applicable.
    pub lhs: Option<T>,
}

impl<T: Scalar> TheoremVerdict<T> {
    fn from_lhs(theorem_id: TheoremId, failed: Vec<Hypothesis>, lhs: T) -> Self {
        if failed.is_empty() {
            let bound = genus_from_lhs(&lhs);
            Self { theorem_id, applicable: true, failed_hypotheses: failed, genus_lower_bound: Some(bound), lhs: Some(lhs) }
        } else {
            Self { theorem_id, applicable: false, failed_hypotheses: failed, genus_lower_bound: None, lhs: None }
        }
    }

    /// Whether `self` gives a strictly stronger conclusion than `other`.
    fn beats(&self, other: &Self) -> bool {
        match (&self.genus_lower_bound, &other.genus_lower_bound) {
            (Some(a), Some(b)) => a > b,
            (Some(_), None) => true,
            _ => false,
        }
    }
}

/// Smallest genus `g >= 1` with `lhs <= 2g - 2`.
pub fn genus_from_lhs<T: Scalar>(lhs: &T) -> T {
    let g = Integer::div_ceil(&(lhs.clone() + T::from_int(2)), &T::from_int(2));
    g.max(T::one())
}

fn common_hypotheses<T: Scalar>(c: &AdjunctionCase<T>) -> Vec<Hypothesis> {
    let mut failed = Vec::new();
    if c.n().is_negative() {
        failed.push(Hypothesis::SelfIntersectionNonnegative);
    }
    if !c.surface.non_torsion {
        failed.push(Hypothesis::NonTorsion);
    }
    if !c.spinc.sw_nonvanishing {
        failed.push(Hypothesis::SwNonvanishing);
    }
    failed
}

fn basic_class_hypotheses<T: Scalar>(c: &AdjunctionCase<T>, failed: &mut Vec<Hypothesis>) {
    if c.d_s.is_negative() {
        failed.push(Hypothesis::NegativeFormalDimension);
    } else if !c.is_basic_insertion() {
        failed.push(Hypothesis::BasicClass);
    }
}

fn chamber_positivity<T: Scalar>(c: &AdjunctionCase<T>, failed: &mut Vec<Hypothesis>) {
    if c.manifold.b2_plus == 1 && (c.n().clone() - c.e().clone()).is_negative() {
        failed.push(Hypothesis::ChamberPositivity);
    }
}

fn b1_gate<T: Scalar>(c: &AdjunctionCase<T>, failed: &mut Vec<Hypothesis>) {
    if c.signed_pairing() + c.n().clone() < T::from_int(2) * c.b1() {
        failed.push(Hypothesis::B1Gate);
    }
}

/// If `b2_plus > 1` and `e > 0`, replaces `[Σ]` by `-[Σ]` (negating `e`).
/// Returns whether the orientation was flipped.
pub fn normalize_orientation<T: Scalar>(c: &AdjunctionCase<T>) -> Result<(AdjunctionCase<T>, bool)> {
    if c.manifold.b2_plus <= 1 {
        return Err(Error::Forbidden(
            "orientation of [Σ] is pinned by the chamber when b2_plus = 1".into(),
        ));
    }
    if c.e().is_positive() {
        let mut out = c.clone();
        out.spinc.pairing_e = -c.e().clone();
        Ok((out, true))
    } else {
        Ok((c.clone(), false))
    }
}

/// `|e| + n + (2 - min(b1, 1)) d(s) <= 2g - 2` for basic classes.
pub fn bound_th1<T: Scalar>(c: &AdjunctionCase<T>) -> TheoremVerdict<T> {
    let mut failed = common_hypotheses(c);
    basic_class_hypotheses(c, &mut failed);
    chamber_positivity(c, &mut failed);
    let coeff = T::from_count(2 - c.manifold.b1.min(1));
    let lhs = c.signed_pairing() + c.n().clone() + coeff * c.d_s.clone();
    TheoremVerdict::from_lhs(TheoremId::Th1, failed, lhs)
}

/// `|e| + n + 2 d(b) <= 2g - 2` when `d(b) <= l(Σ)`, otherwise the weaker
/// `|e| + n + d(b) <= 2g - 2` (reported as `th2_high_degree`).
pub fn bound_th2<T: Scalar>(c: &AdjunctionCase<T>, l_sigma: usize) -> TheoremVerdict<T> {
    let mut failed = common_hypotheses(c);
    chamber_positivity(c, &mut failed);
    let d_b = c.insertion_degree();
    let base = c.signed_pairing() + c.n().clone();
    if c.insertion.degree() <= l_sigma {
        TheoremVerdict::from_lhs(TheoremId::Th2, failed, base + T::from_int(2) * d_b)
    } else {
        TheoremVerdict::from_lhs(TheoremId::Th2HighDegree, failed, base + d_b)
    }
}

/// `|e| + n + 2 d(b) <= 2g - 2` once `|e| + n >= 2 b1`; no `l(Σ)` needed.
pub fn bound_th3<T: Scalar>(c: &AdjunctionCase<T>) -> TheoremVerdict<T> {
    let mut failed = common_hypotheses(c);
    b1_gate(c, &mut failed);
    let lhs = c.signed_pairing() + c.n().clone() + T::from_int(2) * c.insertion_degree();
    TheoremVerdict::from_lhs(TheoremId::Th3, failed, lhs)
}

/// `|e| + n + 2 d(s) - 2 b1 <= 2g - 2` for basic classes with
/// `|e| + 3n >= 2 b1` (and `-e + n >= 0` when `b2_plus = 1`).
pub fn bound_th4<T: Scalar>(c: &AdjunctionCase<T>) -> TheoremVerdict<T> {
    let mut failed = common_hypotheses(c);
    basic_class_hypotheses(c, &mut failed);
    let two_b1 = T::from_int(2) * c.b1();
    if c.signed_pairing() + T::from_int(3) * c.n().clone() < two_b1 {
        failed.push(Hypothesis::Th4Gate);
    }
    chamber_positivity(c, &mut failed);
    let lhs = c.signed_pairing() + c.n().clone() + T::from_int(2) * c.d_s.clone() - two_b1;
    TheoremVerdict::from_lhs(TheoremId::Th4, failed, lhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionCap<T> {
    pub verdict: TheoremVerdict<T>,
    /// `g - b1`, the largest admissible insertion degree. Present iff applicable.
    pub degree_cap: Option<T>,
}

/// Under `|e| + n >= 2 b1`, every insertion with nonvanishing invariant has
/// `d(b) <= g - b1`; read as a genus bound, `g >= d(b) + b1`.
pub fn max_insertion_degree<T: Scalar>(c: &AdjunctionCase<T>) -> InsertionCap<T> {
    let mut failed = common_hypotheses(c);
    b1_gate(c, &mut failed);
    if !failed.is_empty() {
        return InsertionCap {
            verdict: TheoremVerdict::from_lhs(TheoremId::Key, failed, T::zero()),
            degree_cap: None,
        };
    }
    let lhs = c.insertion_degree() + c.b1();
    let verdict = TheoremVerdict {
        theorem_id: TheoremId::Key,
        applicable: true,
        failed_hypotheses: Vec::new(),
        genus_lower_bound: Some(lhs.clone().max(T::one())),
        lhs: Some(lhs),
    };
    let cap = T::from_count(c.surface.genus) - c.b1();
    InsertionCap { verdict, degree_cap: Some(cap) }
}

/// Where the `l(Σ)` used for the th2 branch split came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LSource {
    Supplied,
    Embedding,
    /// `max(0, g - b1)`, always a valid lower bound.
    Referee,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport<T> {
    pub verdicts: Vec<TheoremVerdict<T>>,
    pub best_bound: Option<T>,
    pub normalization_applied: bool,
    pub l_sigma: usize,
    pub l_source: LSource,
    pub degree_cap: Option<T>,
}

fn all_verdicts<T: Scalar>(c: &AdjunctionCase<T>, l_sigma: usize) -> (Vec<TheoremVerdict<T>>, Option<T>) {
    let key = max_insertion_degree(c);
    (vec![bound_th1(c), bound_th2(c, l_sigma), bound_th3(c), bound_th4(c), key.verdict], key.degree_cap)
}

/// Runs every theorem on the case and keeps the strongest bound.
///
/// For `b2_plus > 1` both orientations of `[Σ]` are evaluated and the stronger
/// verdict per theorem is kept. `l(Σ)` is taken from `l_sigma`, else computed
/// from the surface's embedding map, else replaced by `max(0, g - b1)`.
pub fn best_bound<T: Scalar>(c: &AdjunctionCase<T>, l_sigma: Option<usize>) -> Result<BoundReport<T>> {
    c.validate()?;
    let (l, l_source) = match (l_sigma, &c.surface.embedding) {
        (Some(l), _) => (l, LSource::Supplied),
        (None, Some(e)) => (l_invariant(e), LSource::Embedding),
        (None, None) => (referee_bound(c.surface.genus, c.manifold.b1), LSource::Referee),
    };

    let (verdicts, degree_cap, normalization_applied) = if c.manifold.b2_plus > 1 {
        let (norm, flipped) = normalize_orientation(c)?;
        let mut other = norm.clone();
        other.spinc.pairing_e = -norm.spinc.pairing_e.clone();
        let (mut vs, cap) = all_verdicts(&norm, l);
        let (alt, _) = all_verdicts(&other, l);
        for (v, a) in vs.iter_mut().zip(alt) {
            if a.beats(v) {
                *v = a;
            }
        }
        (vs, cap, flipped)
    } else {
        let (vs, cap) = all_verdicts(c, l);
        (vs, cap, false)
    };

    let best_bound = verdicts.iter().filter_map(|v| v.genus_lower_bound.clone()).max();
    Ok(BoundReport { verdicts, best_bound, normalization_applied, l_sigma: l, l_source, degree_cap })
}

/// Blows up a basic-class case `r` times; the insertion becomes `U^{d'/2}`.
pub fn blow_up_case<T: Scalar>(c: &AdjunctionCase<T>, r: usize) -> Result<AdjunctionCase<T>> {
    if !c.is_basic_insertion() {
        return Err(Error::Precondition("blow-up transfer needs a basic-class insertion U^{d/2}".into()));
    }
    let spec = BlowUpSpec { r };
    let b = blow_up(&c.manifold, &c.surface, &c.spinc, &c.d_s, spec);
    let spinc = sw_blowup_transfer(&c.spinc, spec)?;
    debug_assert_eq!(spinc, b.spinc);
    let half = b
        .d
        .to_usize()
        .filter(|_| !b.d.is_negative())
        .ok_or_else(|| Error::Precondition(format!("blow-up by {r} makes d(s) = {} negative", b.d)))?
        / 2;
    AdjunctionCase::new(b.manifold, b.surface, spinc, b.d, InsertionData::u_power(half))
}

/// th3 evaluated on a blown-up case next to th4 on the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pathway<T: Scalar> {
    pub r: usize,
    pub transformed: AdjunctionCase<T>,
    pub th3_on_transform: TheoremVerdict<T>,
    pub th4: TheoremVerdict<T>,
}

fn pathway<T: Scalar>(c: &AdjunctionCase<T>, r: usize) -> Result<Pathway<T>> {
    let base = if c.manifold.b2_plus > 1 { normalize_orientation(c)?.0 } else { c.clone() };
    let transformed = blow_up_case(&base, r)?;
    Ok(Pathway { r, th3_on_transform: bound_th3(&transformed), th4: bound_th4(&base), transformed })
}

/// Blow up `r = n` times; valid when `n <= min(b1, d(s)/2)`.
pub fn lemma41_pathway<T: Scalar>(c: &AdjunctionCase<T>) -> Result<Pathway<T>> {
    let r = c
        .n()
        .to_usize()
        .ok_or_else(|| Error::Precondition(format!("self-intersection {} is not a valid count", c.n())))?;
    let half_d = c.d_s.clone().div_floor(&T::from_int(2));
    if T::from_count(r) > half_d || r > c.manifold.b1 {
        return Err(Error::Precondition("needs n <= min(b1, d(s)/2)".into()));
    }
    pathway(c, r)
}

/// Blow up `r = b1` times; valid when `b1 <= min(n, d(s)/2)`.
pub fn lemma42_pathway<T: Scalar>(c: &AdjunctionCase<T>) -> Result<Pathway<T>> {
    let r = c.manifold.b1;
    let b1 = T::from_count(r);
    let half_d = c.d_s.clone().div_floor(&T::from_int(2));
    if b1 > *c.n() || b1 > half_d {
        return Err(Error::Precondition("needs b1 <= min(n, d(s)/2)".into()));
    }
    pathway(c, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Basic-class case with insertion `U^{d/2}` and no χ/τ.
    pub(crate) fn case(b2_plus: usize, b1: usize, e: i64, n: i64, d: i64) -> AdjunctionCase<i64> {
        let ins = if d >= 0 && d % 2 == 0 { InsertionData::u_power((d / 2) as usize) } else { InsertionData::default() };
        with_insertion(b2_plus, b1, e, n, d, ins)
    }

    fn with_insertion(b2_plus: usize, b1: usize, e: i64, n: i64, d: i64, ins: InsertionData) -> AdjunctionCase<i64> {
        AdjunctionCase::new(
            ManifoldData::new(b1, b2_plus, None, None).unwrap(),
            SurfaceData::new(10, n, true, None).unwrap(),
            SpinCData { name: "s".into(), c1_square: None, pairing_e: e, sw_nonvanishing: true, chamber: Chamber::PdSigma },
            d,
            ins,
        )
        .unwrap()
    }

    fn degree(k: usize) -> InsertionData {
        InsertionData { u_power: 0, surface_one_dim_count: k, ambient_degree: 0 }
    }

    #[test]
    fn genus_from_lhs_rounds_up() {
        assert_eq!(genus_from_lhs(&2i64), 2);
        assert_eq!(genus_from_lhs(&8i64), 5);
        assert_eq!(genus_from_lhs(&7i64), 5);
        assert_eq!(genus_from_lhs(&-6i64), 1);
    }

    #[test]
    fn normalize_orientation_examples() {
        let (c, f) = normalize_orientation(&case(2, 0, 4, 0, 0)).unwrap();
        assert_eq!((c.spinc.pairing_e, f), (-4, true));
        let (c, f) = normalize_orientation(&case(2, 0, -4, 0, 0)).unwrap();
        assert_eq!((c.spinc.pairing_e, f), (-4, false));
        let (c, f) = normalize_orientation(&case(2, 0, 0, 0, 0)).unwrap();
        assert_eq!((c.spinc.pairing_e, f), (0, false));
        assert!(matches!(normalize_orientation(&case(1, 0, 0, 0, 0)), Err(Error::Forbidden(_))));
    }

    #[test]
    fn th1_examples() {
        assert_eq!(bound_th1(&case(2, 0, -2, 0, 0)).genus_lower_bound, Some(2));
        let v = bound_th1(&case(2, 3, -2, 2, 4));
        assert_eq!((v.lhs, v.genus_lower_bound), (Some(8), Some(5)));
        let v = bound_th1(&case(1, 0, 2, 0, 0));
        assert!(!v.applicable);
        assert_eq!(v.failed_hypotheses, vec![Hypothesis::ChamberPositivity]);
    }

    #[test]
    fn th2_examples() {
        let v = bound_th2(&with_insertion(2, 0, -2, 0, 0, degree(0)), 0);
        assert_eq!((v.theorem_id, v.genus_lower_bound), (TheoremId::Th2, Some(2)));
        let v = bound_th2(&with_insertion(2, 0, -2, 2, 0, degree(3)), 3);
        assert_eq!((v.theorem_id, v.lhs, v.genus_lower_bound), (TheoremId::Th2, Some(10), Some(6)));
        let v = bound_th2(&with_insertion(2, 0, -2, 2, 0, degree(3)), 1);
        assert_eq!((v.theorem_id, v.lhs, v.genus_lower_bound), (TheoremId::Th2HighDegree, Some(7), Some(5)));
    }

    #[test]
    fn th3_examples() {
        assert_eq!(bound_th3(&with_insertion(2, 0, -2, 0, 0, degree(0))).genus_lower_bound, Some(2));
        let v = bound_th3(&with_insertion(2, 2, -4, 2, 0, degree(3)));
        assert_eq!((v.lhs, v.genus_lower_bound), (Some(12), Some(7)));
        let v = bound_th3(&with_insertion(2, 4, -2, 2, 0, degree(0)));
        assert_eq!(v.failed_hypotheses, vec![Hypothesis::B1Gate]);
    }

    #[test]
    fn th4_examples() {
        let v = bound_th4(&case(2, 2, -2, 2, 6));
        assert_eq!((v.lhs, v.genus_lower_bound), (Some(12), Some(7)));
        // (e, n) = (0, 1) is Wu-odd, so build the case without validation
        let mut c = case(2, 2, 0, 0, 0);
        c.surface.self_int = 1;
        let v = bound_th4(&c);
        assert_eq!(v.failed_hypotheses, vec![Hypothesis::Th4Gate]);
        // b1 = 0: matches th3 with d(b) = d(s)
        let c = case(2, 0, -2, 2, 4);
        assert_eq!(bound_th4(&c).genus_lower_bound, bound_th3(&c).genus_lower_bound);
    }

    #[test]
    fn th4_rejects_non_basic_and_negative_dimension() {
        let v = bound_th4(&with_insertion(2, 0, -2, 0, 4, degree(1)));
        assert_eq!(v.failed_hypotheses, vec![Hypothesis::BasicClass]);
        let v = bound_th1(&case(2, 0, -2, 0, -2));
        assert_eq!(v.failed_hypotheses, vec![Hypothesis::NegativeFormalDimension]);
    }

    #[test]
    fn key_examples() {
        let mut c = with_insertion(2, 2, -4, 0, 0, degree(0));
        c.surface.genus = 5;
        assert_eq!(max_insertion_degree(&c).degree_cap, Some(3));
        let c = with_insertion(2, 3, -6, 0, 0, degree(4));
        assert_eq!(max_insertion_degree(&c).verdict.genus_lower_bound, Some(7));
        let c = with_insertion(2, 3, -2, 2, 0, degree(4));
        let k = max_insertion_degree(&c);
        assert!(!k.verdict.applicable && k.degree_cap.is_none());
    }

    #[test]
    fn best_bound_examples() {
        let r = best_bound(&case(2, 0, -2, 0, 0), None).unwrap();
        for id in [TheoremId::Th1, TheoremId::Th3, TheoremId::Th4] {
            let v = r.verdicts.iter().find(|v| v.theorem_id == id).unwrap();
            assert_eq!(v.genus_lower_bound, Some(2), "{id}");
        }
        assert_eq!(r.best_bound, Some(2));

        let r = best_bound(&case(2, 1, -2, 2, 4), None).unwrap();
        let get = |id| r.verdicts.iter().find(|v| v.theorem_id == id).unwrap().genus_lower_bound;
        assert_eq!(get(TheoremId::Th1), Some(5));
        assert_eq!(get(TheoremId::Th4), Some(6));
        // th3 with b = U^2 also applies (gate 4 >= 2) and is stronger
        assert_eq!(get(TheoremId::Th3), Some(7));
        assert_eq!(r.best_bound, Some(7));

        let r = best_bound(&case(2, 0, -3, -1, 0), None).unwrap();
        assert_eq!(r.best_bound, None);
        assert!(r.verdicts.iter().all(|v| v.failed_hypotheses.contains(&Hypothesis::SelfIntersectionNonnegative)));
    }

    #[test]
    fn best_bound_normalizes_positive_pairing() {
        let r = best_bound(&case(2, 1, 2, 2, 4), None).unwrap();
        assert!(r.normalization_applied);
        assert_eq!(r.best_bound, best_bound(&case(2, 1, -2, 2, 4), None).unwrap().best_bound);
    }

    #[test]
    fn chamber_pinned_cases_use_signed_pairing() {
        // b2+ = 1, e > 0 with -e + n < 0: everything gated on chamber positivity fails
        let r = best_bound(&case(1, 0, 4, 2, 0), None).unwrap();
        assert!(!r.normalization_applied);
        for v in &r.verdicts {
            if matches!(v.theorem_id, TheoremId::Th1 | TheoremId::Th2 | TheoremId::Th4) {
                assert!(v.failed_hypotheses.contains(&Hypothesis::ChamberPositivity), "{}", v.theorem_id);
            }
        }
        assert!(!bound_th3(&case(1, 0, 4, 2, 0)).applicable);
    }

    #[test]
    fn validation_rules() {
        let bad = AdjunctionCase::new(
            ManifoldData::<i64>::new(0, 1, None, None).unwrap(),
            SurfaceData::new(1, 0, true, None).unwrap(),
            SpinCData { name: "s".into(), c1_square: None, pairing_e: 0, sw_nonvanishing: true, chamber: Chamber::NotApplicable },
            0,
            InsertionData::default(),
        );
        assert!(matches!(bad, Err(Error::Validation { rule: "chamber_required", .. })));
        let bad = AdjunctionCase::new(
            ManifoldData::<i64>::new(0, 2, None, None).unwrap(),
            SurfaceData::new(1, 0, true, None).unwrap(),
            SpinCData { name: "s".into(), c1_square: None, pairing_e: 1, sw_nonvanishing: true, chamber: Chamber::NotApplicable },
            0,
            InsertionData::default(),
        );
        assert!(matches!(bad, Err(Error::Validation { rule: "wu_parity", .. })));
    }

    #[test]
    fn lemma_pathways_on_a_sample() {
        // n = 1 <= min(b1 = 2, d/2 = 3); th4 gate: 3 + 3 >= 4
        let c = case(2, 2, -3, 1, 6);
        let p = lemma41_pathway(&c).unwrap();
        assert_eq!(p.transformed.surface.self_int, 0);
        assert!(p.th3_on_transform.applicable && p.th4.applicable);
        assert_eq!(p.th3_on_transform.lhs.unwrap() - 2 * (2 - 1), p.th4.lhs.unwrap());

        // b1 = 2 <= min(n = 4, d/2 = 3)
        let c = case(2, 2, -2, 4, 6);
        let p = lemma42_pathway(&c).unwrap();
        assert_eq!(p.th3_on_transform.genus_lower_bound, p.th4.genus_lower_bound);
        assert!(lemma41_pathway(&c).is_err());
    }
}
