//! Outward-rounded interval arithmetic without touching the FPU rounding mode.
//!
//! Each bound is computed in round-to-nearest and then nudged by one ulp only
//! when an error-free transformation shows the rounded value is on the wrong
//! side of the exact result. Outside the range where those transformations
//! are exact (overflow, underflow) the bound is nudged unconditionally.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::polynomials::Poly;
use crate::scalar::Scalar;

/// Below this magnitude the product and quotient residuals may underflow.
const TINY: f64 = 1e-290;

/// `a + b` rounded down and up.
fn add_bounds(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return unbounded_like(s);
    }
    // TwoSum
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    match err.partial_cmp(&0.0) {
        Some(std::cmp::Ordering::Greater) => (s, s.next_up()),
        Some(std::cmp::Ordering::Less) => (s.next_down(), s),
        _ => (s, s),
    }
}

fn mul_bounds(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return unbounded_like(p);
    }
    if p == 0.0 && (a == 0.0 || b == 0.0) {
        return (0.0, 0.0);
    }
    if p.abs() < TINY {
        return (p.next_down(), p.next_up());
    }
    let err = a.mul_add(b, -p);
    classify(p, err)
}

fn div_bounds(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if !q.is_finite() {
        return unbounded_like(q);
    }
    if a == 0.0 {
        return (0.0, 0.0);
    }
    if q.abs() < TINY || b.abs() < TINY {
        return (q.next_down(), q.next_up());
    }
    // a − q·b is exact; the true quotient exceeds q iff it has the sign of b
    let r = (-q).mul_add(b, a);
    let err = if b > 0.0 { r } else { -r };
    classify(q, err)
}

fn sqrt_bounds(x: f64) -> (f64, f64) {
    let r = x.sqrt();
    if x == 0.0 || !r.is_finite() {
        return (r, r);
    }
    if x < TINY {
        return (r.next_down().max(0.0), r.next_up());
    }
    let err = (-r).mul_add(r, x);
    classify(r, err)
}

/// Bounds for a rounded value whose exact counterpart is `v + err` (sign only).
fn classify(v: f64, err: f64) -> (f64, f64) {
    if err > 0.0 {
        (v, v.next_up())
    } else if err < 0.0 {
        (v.next_down(), v)
    } else {
        (v, v)
    }
}

fn unbounded_like(v: f64) -> (f64, f64) {
    if v == f64::INFINITY {
        (f64::MAX, f64::INFINITY)
    } else if v == f64::NEG_INFINITY {
        (f64::NEG_INFINITY, f64::MIN)
    } else {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

/// Closed interval `[lo, hi]` of reals.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidArgument(format!("not an interval: [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn entire() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// Smallest float interval containing the rational `q`.
    pub fn from_rational(q: &BigRational) -> Self {
        Self::hull_of_rationals(q, q)
    }

    /// Smallest float interval containing `[lo, hi]` for rational bounds.
    pub fn hull_of_rationals(lo: &BigRational, hi: &BigRational) -> Self {
        Self {
            lo: round_rational(lo, false),
            hi: round_rational(hi, true),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let lo = BigRational::from_f64_exact(self.lo);
        let hi = BigRational::from_f64_exact(self.hi);
        (self.lo == f64::NEG_INFINITY || lo <= *q) && (self.hi == f64::INFINITY || *q <= hi)
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `hi − lo`, rounded up.
    pub fn width(&self) -> f64 {
        add_bounds(self.hi, -self.lo).1
    }

    /// Float nearest the midpoint; always inside the interval.
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = self.lo / 2.0 + self.hi / 2.0;
        m.clamp(self.lo, self.hi)
    }

    /// `max(mid − lo, hi − mid)`, rounded up.
    pub fn radius(&self) -> f64 {
        let m = self.mid();
        add_bounds(self.hi, -m).1.max(add_bounds(m, -self.lo).1)
    }

    /// `max(|lo|, |hi|)`.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Self { lo, hi })
    }

    /// Certified sign: `Some(±1)` if the interval excludes zero, `Some(0)`
    /// for the point zero, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        if self.lo > 0.0 {
            Some(1)
        } else if self.hi < 0.0 {
            Some(-1)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(0)
        } else {
            None
        }
    }

    pub fn div(&self, rhs: &Interval) -> Result<Self> {
        if rhs.contains_zero() {
            return Err(Error::IntervalDivisionByZero);
        }
        let cands = [
            div_bounds(self.lo, rhs.lo),
            div_bounds(self.lo, rhs.hi),
            div_bounds(self.hi, rhs.lo),
            div_bounds(self.hi, rhs.hi),
        ];
        Ok(Self::from_candidates(&cands))
    }

    pub fn recip(&self) -> Result<Self> {
        Interval::point(1.0).div(self)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo < 0.0 {
            return Err(Error::NegativeSqrt);
        }
        Ok(Self {
            lo: sqrt_bounds(self.lo).0,
            hi: sqrt_bounds(self.hi).1,
        })
    }

    pub fn sqr(&self) -> Self {
        if self.lo >= 0.0 {
            Self {
                lo: mul_bounds(self.lo, self.lo).0,
                hi: mul_bounds(self.hi, self.hi).1,
            }
        } else if self.hi <= 0.0 {
            Self {
                lo: mul_bounds(self.hi, self.hi).0,
                hi: mul_bounds(self.lo, self.lo).1,
            }
        } else {
            let m = self.mag();
            Self {
                lo: 0.0,
                hi: mul_bounds(m, m).1,
            }
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Interval::point(1.0);
        for _ in 0..k {
            out = out * *self;
        }
        out
    }

    pub fn scale(&self, k: f64) -> Self {
        *self * Interval::point(k)
    }

    fn from_candidates(c: &[(f64, f64)]) -> Self {
        let lo = c.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = c.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Self { lo, hi }
    }

    /// Image under `λ(z) = (z + 1/z)/2`.
    ///
    /// The map is decreasing on `(−1, 0)` and on `(0, 1)`, so the image of a
    /// box inside either piece is spanned by the images of its endpoints.
    pub fn joukowski(&self) -> Result<Self> {
        let inside = (self.lo > 0.0 && self.hi < 1.0) || (self.lo > -1.0 && self.hi < 0.0);
        if !inside {
            return Err(Error::InvalidArgument(format!(
                "Joukowski image needs a box inside (-1, 0) or (0, 1), got {self}"
            )));
        }
        let at = |z: f64| -> Result<Interval> {
            let p = Interval::point(z);
            Ok((p + p.recip()?).scale(0.5))
        };
        Ok(Self {
            lo: at(self.hi)?.lo,
            hi: at(self.lo)?.hi,
        })
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_bounds(self.lo, rhs.lo).0,
            hi: add_bounds(self.hi, rhs.hi).1,
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        Interval::from_candidates(&[
            mul_bounds(self.lo, rhs.lo),
            mul_bounds(self.lo, rhs.hi),
            mul_bounds(self.hi, rhs.lo),
            mul_bounds(self.hi, rhs.hi),
        ])
    }
}

/// Nearest float on the requested side of a rational.
fn round_rational(q: &BigRational, up: bool) -> f64 {
    let f = q.to_f64();
    if f.is_infinite() {
        return if up {
            if f > 0.0 { f64::INFINITY } else { f64::MIN }
        } else if f > 0.0 {
            f64::MAX
        } else {
            f64::NEG_INFINITY
        };
    }
    let back = BigRational::from_f64_exact(f);
    if up && back < *q {
        f.next_up()
    } else if !up && back > *q {
        f.next_down()
    } else {
        f
    }
}

/// Interval Horner evaluation of a float polynomial.
pub fn eval_poly(p: &Poly<f64>, x: Interval) -> Interval {
    p.coeffs()
        .iter()
        .rev()
        .fold(Interval::point(0.0), |acc, &c| acc * x + Interval::point(c))
}

/// Mean-value form `p(m) + p′(X)(X − m)` intersected with plain Horner.
pub fn eval_poly_centered(p: &Poly<f64>, dp: &Poly<f64>, x: Interval) -> Interval {
    let m = Interval::point(x.mid());
    let centered = eval_poly(p, m) + eval_poly(dp, x) * (x - m);
    let plain = eval_poly(p, x);
    centered.intersect(&plain).unwrap_or(plain)
}

/// Sign of a rational as `−1, 0, 1`.
pub fn rational_sign(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
