#![allow(dead_code)]

use adjunct_core::adjunction::AdjunctionCase;
use adjunct_core::swtopology::{Chamber, InsertionData, ManifoldData, SpinCData, SurfaceData};
use adjunct_core::{BigInt, Case};

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Basic-class insertion `U^{d/2}` when `d` is even and non-negative, else the empty insertion.
pub fn basic_insertion(d: i64) -> InsertionData {
    if d >= 0 && d % 2 == 0 {
        InsertionData::u_power((d / 2) as usize)
    } else {
        InsertionData::default()
    }
}

/// Case without validation, so deliberately invalid inputs can be built too.
pub fn raw_case(b2_plus: usize, b1: usize, genus: usize, e: i64, n: i64, d: i64, insertion: InsertionData) -> Case {
    let chamber = if b2_plus == 1 { Chamber::PdSigma } else { Chamber::NotApplicable };
    AdjunctionCase {
        manifold: ManifoldData { b1, b2_plus, chi: None, tau: None },
        surface: SurfaceData { genus, self_int: int(n), non_torsion: true, embedding: None },
        spinc: SpinCData { name: "s".into(), c1_square: None, pairing_e: int(e), sw_nonvanishing: true, chamber },
        d_s: int(d),
        insertion,
    }
}

/// Validated basic-class case of genus 10.
pub fn case(b2_plus: usize, b1: usize, e: i64, n: i64, d: i64) -> Case {
    let c = raw_case(b2_plus, b1, 10, e, n, d, basic_insertion(d));
    c.validate().expect("test case is valid");
    c
}

pub fn bound(v: &adjunct_core::Verdict) -> Option<i64> {
    v.genus_lower_bound.as_ref().map(|b| i64::try_from(b).expect("small bound"))
}

pub fn lhs(v: &adjunct_core::Verdict) -> Option<i64> {
    v.lhs.as_ref().map(|b| i64::try_from(b).expect("small lhs"))
}
