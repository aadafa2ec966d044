//! JSON case-file schema. Integers are JSON numbers (or decimal strings when
//! they exceed 64 bits); rationals are `"p/q"` strings or plain integers.
//! Floating-point numbers are rejected everywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::swtopology::{Chamber, InsertionData};
use crate::BigRational;

/// Arbitrary-precision integer as it appears in case files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactInt(pub BigInt);

impl From<i64> for ExactInt {
    fn from(x: i64) -> Self {
        ExactInt(BigInt::from(x))
    }
}

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct ExactIntVisitor;

impl Visitor<'_> for ExactIntVisitor {
    type Value = ExactInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer (JSON number or decimal string)")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactInt, E> {
        Ok(ExactInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactInt, E> {
        Ok(ExactInt(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExactInt, E> {
        Err(E::custom(format!("floating-point value {v} is not accepted; use an exact integer")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactInt, E> {
        BigInt::from_str(v.trim())
            .map(ExactInt)
            .map_err(|_| E::custom(format!("'{v}' is not a decimal integer")))
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ExactIntVisitor)
    }
}

/// Exact rational, written `"p/q"`, `"p"` or as a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRational(pub BigRational);

impl ExactRational {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num).map_err(|_| format!("'{s}' is not a rational p/q"))?;
        let d = BigInt::from_str(den).map_err(|_| format!("'{s}' is not a rational p/q"))?;
        if d.is_zero() {
            return Err(format!("'{s}' has a zero denominator"));
        }
        Ok(ExactRational(BigRational::new(n, d)))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct ExactRationalVisitor;

impl Visitor<'_> for ExactRationalVisitor {
    type Value = ExactRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational \"p/q\" string or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactRational, E> {
        Ok(ExactRational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactRational, E> {
        Ok(ExactRational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExactRational, E> {
        Err(E::custom(format!("floating-point value {v} is not accepted; write it as \"p/q\"")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactRational, E> {
        ExactRational::parse(v).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ExactRationalVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Query {
    GenusBound,
    MaxInsertionDegree,
    Blowup,
    LInvariant,
    CompletePrimitive,
}

impl Query {
    pub fn label(&self) -> &'static str {
        match self {
            Query::GenusBound => "genus_bound",
            Query::MaxInsertionDegree => "max_insertion_degree",
            Query::Blowup => "blowup",
            Query::LInvariant => "l_invariant",
            Query::CompletePrimitive => "complete_primitive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldBlock {
    pub b1: usize,
    pub b2_plus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<ExactInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<ExactInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBlock {
    pub genus: usize,
    pub self_intersection: ExactInt,
    pub non_torsion: bool,
    /// Rows of `i_*` in a symplectic basis: `b1` rows of `2g` rationals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<Vec<ExactRational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwBlock {
    pub nonvanishing: bool,
    /// Defaults to `U^{d/2}` (the basic-class insertion) when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub insertion: Option<InsertionData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCBlock {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1_square: Option<ExactInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_e: Option<ExactInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_s: Option<ExactInt>,
    pub sw: SwBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<Chamber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpBlock {
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveBlock {
    /// A-span coefficients `a_1..a_g`.
    pub coeffs: Vec<ExactInt>,
}

/// One case: exactly one query plus the blocks it needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFile {
    pub query: Query,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<ManifoldBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spinc: Vec<SpinCBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup: Option<BlowUpBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive: Option<PrimitiveBlock>,
    /// Known value of `l(Σ)`, overriding the embedding map and the `g - b1` fallback.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_sigma: Option<usize>,
}
