//! Field abstraction shared by the floating and exact-rational code paths.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// A real field the recurrences can run over.
///
/// `f64` gives the floating path; `BigRational` gives exact arithmetic for
/// operators whose entries are rational (every finite `f64` is).
pub trait Scalar: Num + Clone + Debug + Display + PartialOrd + Neg<Output = Self> {
    /// Exact conversion of a finite float.
    fn from_f64_exact(x: f64) -> Self;
    /// Nearest float.
    fn to_f64(&self) -> f64;

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Whether exact equality checks are meaningful for this field.
    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn from_f64_exact(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn from_f64_exact(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
    fn is_exact() -> bool {
        true
    }
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
