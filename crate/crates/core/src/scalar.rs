//! The exact integer scalar abstraction shared by every module.
//!
//! All math in this crate is written against [`Scalar`]. The canonical
//! instantiation is [`num_bigint::BigInt`] (see the aliases in the crate root);
//! fixed-width `i64`/`i128` work as well and are noticeably faster for the
//! brute-force oracle, at the price of possible overflow on large inputs.
//! Floating-point types are deliberately not admitted: `Scalar` requires
//! [`Integer`] and rationals are built as `Ratio<T>` on top of it.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lifts a small machine integer. Panics only if `Self` is narrower than the value.
    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer literal does not fit the scalar type")
    }

    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count does not fit the scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Exact rationals over a scalar ring.
pub type Rational<T> = Ratio<T>;

/// Greatest common divisor of the absolute values of a slice (0 for an all-zero slice).
pub fn content<T: Scalar>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |acc, x| acc.gcd(x))
}

/// Bezout coefficients `(g, x, y)` with `x*a + y*b = g = gcd(a, b) >= 0`.
pub fn bezout<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}
