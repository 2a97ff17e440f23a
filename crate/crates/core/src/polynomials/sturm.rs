//! Sturm sequences over the integers.
//!
//! Rational input is cleared of denominators and each remainder is reduced
//! to its primitive part, which keeps coefficient growth in check while
//! preserving every sign the theorem needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Integer polynomial, ascending coefficients, trimmed.
type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn primitive(mut p: IntPoly) -> IntPoly {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

/// Positive multiple of `p` with integer coefficients.
fn clear_denominators(p: &Poly<BigRational>) -> IntPoly {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let out = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    primitive(out)
}

/// Remainder of `a` by `b` up to a positive factor.
fn positive_pseudo_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    let lb_abs = lb.abs();
    let sign_b = lb.signum();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r ← |lb|·r − sign(lb)·lr·z^{dr−db}·b keeps the positive scaling
        for c in &mut r {
            *c *= &lb_abs;
        }
        let factor = &lr * &sign_b;
        for (k, bc) in b.iter().enumerate() {
            r[dr - db + k] -= &factor * bc;
        }
        trim(&mut r);
        r = primitive(r);
    }
    r
}

/// Sign of `p(num/den)` for `den > 0`, evaluated homogeneously.
fn sign_at(p: &IntPoly, num: &BigInt, den: &BigInt) -> Sign {
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    let mut num_pows = Vec::with_capacity(p.len());
    let mut np = BigInt::one();
    for _ in 0..p.len() {
        num_pows.push(np.clone());
        np *= num;
    }
    for k in (0..p.len()).rev() {
        acc += &p[k] * &num_pows[k] * &den_pow;
        if k > 0 {
            den_pow *= den;
        }
    }
    acc.sign()
}

/// Sturm chain `p, p′, −rem(p, p′), …` with positive rescalings.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &Poly<BigRational>) -> Self {
        let p0 = clear_denominators(p);
        if p0.len() <= 1 {
            return Self { chain: vec![p0] };
        }
        let mut dp: IntPoly = p0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        trim(&mut dp);
        let mut chain = vec![p0, primitive(dp)];
        loop {
            let n = chain.len();
            if chain[n - 1].len() <= 1 {
                break;
            }
            let r = positive_pseudo_remainder(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Self { chain }
    }

    pub fn from_f64(p: &Poly<f64>) -> Self {
        Self::new(&p.to_rational())
    }

    /// Sign of the polynomial itself at `x`.
    pub fn sign(&self, x: &BigRational) -> Sign {
        sign_at(&self.chain[0], x.numer(), x.denom())
    }

    /// Sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for q in &self.chain {
            let s = sign_at(q, x.numer(), x.denom());
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(a, b]`; both endpoints must be non-roots.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> Result<usize> {
        for x in [a, b] {
            if self.sign(x) == Sign::NoSign {
                return Err(Error::EndpointRoot {
                    at: crate::scalar::Scalar::to_f64(x),
                });
            }
        }
        if self.chain[0].is_empty() {
            return Ok(0);
        }
        let (va, vb) = (self.variations(a), self.variations(b));
        Ok(va.saturating_sub(vb))
    }
}

/// Number of distinct real roots of `p` in `(a, b]`, computed exactly.
pub fn sturm_count(p: &Poly<f64>, a: f64, b: f64) -> Result<usize> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidArgument(format!("bad interval ({a}, {b})")));
    }
    let seq = SturmSequence::from_f64(p);
    seq.count(
        &BigRational::from_float(a).expect("finite"),
        &BigRational::from_float(b).expect("finite"),
    )
}

/// Exact variant for rational polynomials and endpoints.
pub fn sturm_count_exact(p: &Poly<BigRational>, a: &BigRational, b: &BigRational) -> Result<usize> {
    SturmSequence::new(p).count(a, b)
}
