//! Exact coefficient types for class arithmetic.
//!
//! Every class coordinate lives in an [`ExactScalar`]. Floating point types
//! deliberately do not implement it: all comparisons in this crate are
//! equalities of rationals, and a rounding error would silently turn a
//! trivial class into a nontrivial one.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// A field of exact rationals usable as class coefficients.
pub trait ExactScalar: Clone + Debug + Display + Eq + Ord + Hash + Num + Signed + Send + Sync + 'static {
    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self;

    /// `n / d` in lowest terms. Panics if `d == 0`.
    fn ratio(n: i64, d: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// The value as an `i64` when it is an integer that fits.
    fn to_i64_exact(&self) -> Option<i64>;

    /// Canonical lowest-terms text: `"7/2"`, `"-3"`, `"0"`.
    fn to_canonical(&self) -> String {
        self.to_string()
    }

    /// Parses `"p/q"` or `"p"`; the result is normalized.
    fn parse_canonical(s: &str) -> Option<Self>;

    /// Integer division test: `self / k` is an integer (requires `self` integral).
    fn divisible_by(&self, k: u64) -> bool;

    /// Largest integer not exceeding `self`, when it fits in `i64`.
    fn floor_i64(&self) -> Option<i64>;
}

impl ExactScalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn parse_canonical(s: &str) -> Option<Self> {
        parse_ratio(s)
    }

    fn divisible_by(&self, k: u64) -> bool {
        self.is_integer() && self.numer().is_multiple_of(&BigInt::from(k))
    }

    fn floor_i64(&self) -> Option<i64> {
        self.floor().numer().to_i64()
    }
}

impl ExactScalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn ratio(n: i64, d: i64) -> Self {
        Ratio::new(n, d)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_i64_exact(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }

    fn parse_canonical(s: &str) -> Option<Self> {
        parse_ratio(s)
    }

    fn divisible_by(&self, k: u64) -> bool {
        match i64::try_from(k) {
            Ok(k) => self.is_integer() && self.numer().is_multiple_of(&k),
            Err(_) => self.is_zero(),
        }
    }

    fn floor_i64(&self) -> Option<i64> {
        Some(*self.floor().numer())
    }
}

fn parse_ratio<T>(s: &str) -> Option<Ratio<T>>
where
    T: Clone + Integer + FromStr,
{
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<T>().ok()?, d.trim().parse::<T>().ok()?),
        None => (s.parse::<T>().ok()?, T::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Ratio::new(n, d))
}

/// Convenience for `S::from_i64`.
pub fn int<S: ExactScalar>(n: i64) -> S {
    S::from_i64(n)
}

/// Serde adapter writing a scalar as its canonical string.
pub fn serialize_scalar<S: ExactScalar, Ser: serde::Serializer>(v: &S, s: Ser) -> Result<Ser::Ok, Ser::Error> {
    s.serialize_str(&v.to_canonical())
}
