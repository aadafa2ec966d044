//! Integer bookkeeping for the ambient 4-manifold, Spin^c data, insertion
//! classes and the blow-up transform `M̂ = M # r CP̄²`.
//!
//! Nothing here touches the Seiberg-Witten equations: nonvanishing of the
//! invariant is an input flag that the blow-up transfer merely propagates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduction::EmbeddingMap;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldData<T> {
    pub b1: usize,
    pub b2_plus: usize,
    /// Euler characteristic, optional when `d(s)` is supplied directly.
    pub chi: Option<T>,
    /// Signature, optional when `d(s)` is supplied directly.
    pub tau: Option<T>,
}

impl<T: Scalar> ManifoldData<T> {
    pub fn new(b1: usize, b2_plus: usize, chi: Option<T>, tau: Option<T>) -> Result<Self> {
        if b2_plus == 0 {
            return Err(Error::Precondition("b2_plus must be at least 1".into()));
        }
        Ok(Self { b1, b2_plus, chi, tau })
    }
}

/// Chamber tag. The only chamber the adjunction theorems use is the one
/// containing `PD[Σ]`, and it is mandatory when `b2_plus = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chamber {
    PdSigma,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinCData<T> {
    pub name: String,
    pub c1_square: Option<T>,
    /// `e = <[Σ], c1(s)>`, signed.
    pub pairing_e: T,
    pub sw_nonvanishing: bool,
    pub chamber: Chamber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData<T: Scalar> {
    pub genus: usize,
    /// `n = [Σ]·[Σ]`.
    pub self_int: T,
    pub non_torsion: bool,
    pub embedding: Option<EmbeddingMap<T>>,
}

impl<T: Scalar> SurfaceData<T> {
    pub fn new(genus: usize, self_int: T, non_torsion: bool, embedding: Option<EmbeddingMap<T>>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Precondition("surface genus must be positive".into()));
        }
        if let Some(e) = &embedding {
            if e.genus() != genus {
                return Err(Error::DimensionMismatch { expected: 2 * genus, found: 2 * e.genus() });
            }
        }
        Ok(Self { genus, self_int, non_torsion, embedding })
    }
}

/// The insertion `b = U^u_power · (product of surface_one_dim_count classes
/// from H_1(Σ))` together with the degree of the ambient factor `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct InsertionData {
    pub u_power: usize,
    pub surface_one_dim_count: usize,
    pub ambient_degree: usize,
}

impl InsertionData {
    /// `U^k`, the insertion of a basic class of formal dimension `2k`.
    pub fn u_power(k: usize) -> Self {
        Self { u_power: k, ..Self::default() }
    }

    /// `H_0` generators have degree two, `H_1` classes degree one.
    pub fn degree(&self) -> usize {
        2 * self.u_power + self.surface_one_dim_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BlowUpSpec {
    pub r: usize,
}

/// `d(s) = (c1(s)² - (2χ + 3τ)) / 4`.
pub fn d_invariant<T: Scalar>(c1_square: &T, chi: &T, tau: &T) -> Result<T> {
    let num = c1_square.clone() - (T::from_int(2) * chi.clone() + T::from_int(3) * tau.clone());
    let (q, rem) = num.div_rem(&T::from_int(4));
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "c1^2 - (2 chi + 3 tau) = {num} is not divisible by 4"
        )));
    }
    Ok(q)
}

/// `|e| + n` must be even for the pairing of a characteristic class with a
/// closed surface.
pub fn wu_parity_check<T: Scalar>(e: &T, n: &T) -> bool {
    (e.abs() + n.clone()).is_even()
}

/// `c1² ≡ τ (mod 8)`, which holds for characteristic elements.
pub fn mod8_consistent<T: Scalar>(c1_square: &T, tau: &T) -> bool {
    (c1_square.clone() - tau.clone()).mod_floor(&T::from_int(8)).is_zero()
}

/// Picks `d(s)`: the supplied value, the value computed from `(c1², χ, τ)`,
/// or both after checking they agree.
pub fn resolve_d<T: Scalar>(m: &ManifoldData<T>, sp: &SpinCData<T>, supplied: Option<&T>) -> Result<T> {
    let computed = match (&sp.c1_square, &m.chi, &m.tau) {
        (Some(c), Some(chi), Some(tau)) => Some(d_invariant(c, chi, tau)?),
        _ => None,
    };
    match (supplied, computed) {
        (Some(s), Some(c)) if *s != c => Err(Error::Inconsistent(format!(
            "supplied d(s) = {s} but (c1^2 - 2 chi - 3 tau)/4 = {c}"
        ))),
        (Some(s), _) => Ok(s.clone()),
        (None, Some(c)) => Ok(c),
        (None, None) => Err(Error::Precondition(
            "d(s) needs either d_s or all of c1_square, chi and tau".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlownUp<T: Scalar> {
    pub manifold: ManifoldData<T>,
    pub surface: SurfaceData<T>,
    pub spinc: SpinCData<T>,
    pub d: T,
}

/// Proper transform `[Σ̂] = [Σ] - E_1 - ... - E_r` with
/// `c1(ŝ) = c1(s) - 3 Σ PD[E_i]`:
/// `n' = n - r`, `e' = e - 3r`, `d' = d - 2r`, `c1²' = c1² - 9r`,
/// `χ' = χ + r`, `τ' = τ - r`. Betti numbers other than `b2⁻` and the genus
/// are unchanged.
pub fn blow_up<T: Scalar>(
    m: &ManifoldData<T>,
    s: &SurfaceData<T>,
    sp: &SpinCData<T>,
    d: &T,
    spec: BlowUpSpec,
) -> BlownUp<T> {
    let r = T::from_count(spec.r);
    let manifold = ManifoldData {
        b1: m.b1,
        b2_plus: m.b2_plus,
        chi: m.chi.as_ref().map(|c| c.clone() + r.clone()),
        tau: m.tau.as_ref().map(|t| t.clone() - r.clone()),
    };
    let surface = SurfaceData { self_int: s.self_int.clone() - r.clone(), ..s.clone() };
    let spinc = SpinCData {
        c1_square: sp.c1_square.as_ref().map(|c| c.clone() - T::from_int(9) * r.clone()),
        pairing_e: sp.pairing_e.clone() - T::from_int(3) * r.clone(),
        ..sp.clone()
    };
    let d = d.clone() - T::from_int(2) * r;
    BlownUp { manifold, surface, spinc, d }
}

/// Carries a nonvanishing Seiberg-Witten hypothesis across the blow-up. The
/// chamber tag now refers to the chamber containing `PD[Σ̂]`.
pub fn sw_blowup_transfer<T: Scalar>(sp: &SpinCData<T>, spec: BlowUpSpec) -> Result<SpinCData<T>> {
    if !sp.sw_nonvanishing {
        return Err(Error::HypothesisViolation(format!(
            "Spin^c structure '{}' is not flagged with a nonvanishing invariant",
            sp.name
        )));
    }
    let r = T::from_count(spec.r);
    Ok(SpinCData {
        c1_square: sp.c1_square.as_ref().map(|c| c.clone() - T::from_int(9) * r.clone()),
        pairing_e: sp.pairing_e.clone() - T::from_int(3) * r,
        sw_nonvanishing: true,
        ..sp.clone()
    })
}
