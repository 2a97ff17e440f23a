use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Real polynomial in the monomial basis, coefficients in ascending degree.
///
/// Always trimmed: the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T = f64> {
    coeffs: Vec<T>,
}

fn trim_back<T: Scalar>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        trim_back(&mut coeffs);
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = T::one();
        Self { coeffs: v }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_f64_exact(k as f64))
            .collect();
        Self::new(coeffs)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    /// Divide by `z − root`, returning the quotient and the remainder `p(root)`.
    pub fn divide_linear(&self, root: &T) -> (Self, T) {
        if self.is_zero() {
            return (Self::zero(), T::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for k in (0..n).rev() {
            let value = self.coeffs[k].clone() + carry.clone() * root.clone();
            if k == 0 {
                return (Self::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Quotient of `p` by `z − root`; fails unless `|p(root)| ≤ tolerance`.
    pub fn deflate(&self, root: &T, tolerance: f64) -> Result<Self> {
        let (quotient, remainder) = self.divide_linear(root);
        let residual = remainder.abs_value().to_f64();
        if residual > tolerance || (T::is_exact() && !remainder.is_zero()) {
            return Err(Error::DeflationAtNonRoot {
                at: root.to_f64(),
                residual,
            });
        }
        Ok(quotient)
    }

    /// `p(1/z)` as a Laurent polynomial.
    pub fn reflect(&self) -> LaurentPoly<T> {
        LaurentPoly::from_poly(self).reflect()
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs_value().to_f64()))
    }
}

impl Poly<f64> {
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and derivative at `x` in one Horner pass.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// Exact rational copy (finite floats are dyadic rationals).
    pub fn to_rational(&self) -> Poly<BigRational> {
        Poly::new(self.coeffs.iter().map(|&c| BigRational::from_f64_exact(c)).collect())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Laurent polynomial `Σ_{k=lo}^{hi} a_k z^k`, trimmed at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<T = f64> {
    lo: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn new(lo: i64, mut coeffs: Vec<T>) -> Self {
        trim_back(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            lo: lo + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        Self {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: &Poly<T>) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    /// `c·z^k`.
    pub fn monomial(k: i64, c: T) -> Self {
        Self::new(k, vec![c])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent (equal to `lo - 1` for the zero polynomial).
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: i64) -> T {
        if k < self.lo {
            return T::zero();
        }
        self.coeffs
            .get((k - self.lo) as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// `z ↦ 1/z`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.hi(), coeffs)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.lo, self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    fn combine(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Self {
        if self.is_zero() && rhs.is_zero() {
            return Self::zero();
        }
        let (lo, hi) = if self.is_zero() {
            (rhs.lo, rhs.hi())
        } else if rhs.is_zero() {
            (self.lo, self.hi())
        } else {
            (self.lo.min(rhs.lo), self.hi().max(rhs.hi()))
        };
        let coeffs = (lo..=hi).map(|k| f(self.coeff(k), rhs.coeff(k))).collect();
        Self::new(lo, coeffs)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs_value().to_f64()))
    }

    pub fn to_f64(&self) -> LaurentPoly<f64> {
        LaurentPoly::new(self.lo, self.coeffs.iter().map(|c| c.to_f64()).collect())
    }
}

impl LaurentPoly<f64> {
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let body = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        body * z.powi(self.lo as i32)
    }
}

impl<T: Scalar> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, out)
    }
}

/// Expansion `Σ a_k U_k` in Chebyshev polynomials of the second kind.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> ChebSeries<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        trim_back(&mut coeffs);
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The single term `U_k`.
    pub fn basis(k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = T::one();
        Self { coeffs: v }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Multiplication by `λ`, using `λU_k = (U_{k−1} + U_{k+1})/2`.
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let two = T::one() + T::one();
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            let half = a.clone() / two.clone();
            out[k + 1] = out[k + 1].clone() + half.clone();
            if k > 0 {
                out[k - 1] = out[k - 1].clone() + half;
            }
        }
        Self::new(out)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: &T) -> T {
        let two_x = (T::one() + T::one()) * x.clone();
        let mut b1 = T::zero();
        let mut b2 = T::zero();
        for a in self.coeffs.iter().rev() {
            let b0 = a.clone() + two_x.clone() * b1.clone() - b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    /// Convert to the monomial basis.
    pub fn to_monomial(&self) -> Poly<T> {
        let two = T::one() + T::one();
        let mut out = Poly::zero();
        let mut prev = Poly::zero();
        let mut cur = Poly::one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                let next = &cur.shift_up(1).scale(&two) - &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            out = &out + &cur.scale(a);
        }
        out
    }

    /// Convert from the monomial basis.
    pub fn from_monomial(p: &Poly<T>) -> Self {
        let mut out = Self::zero();
        let mut power = Self::basis(0);
        for (k, a) in p.coeffs().iter().enumerate() {
            if k > 0 {
                power = power.mul_x();
            }
            out = out.add(&power.scale(a));
        }
        out
    }

    /// `f(λ(z))` with `λ(z) = (z + 1/z)/2`, via `U_k(λ(z)) = z^{−k} + z^{−k+2} + … + z^k`.
    pub fn to_joukowski(&self) -> LaurentPoly<T> {
        let Some(deg) = self.coeffs.len().checked_sub(1) else {
            return LaurentPoly::zero();
        };
        let deg = deg as i64;
        let mut out = vec![T::zero(); (2 * deg + 1) as usize];
        for (k, a) in self.coeffs.iter().enumerate() {
            let k = k as i64;
            for j in (-k..=k).step_by(2) {
                let idx = (j + deg) as usize;
                out[idx] = out[idx].clone() + a.clone();
            }
        }
        LaurentPoly::new(-deg, out)
    }

    /// μ-derivative with respect to the semicircle measure: `U_k ↦ 2U_{k−1}`.
    pub fn mu_derivative(&self) -> Self {
        let two = T::one() + T::one();
        Self::new(
            self.coeffs
                .iter()
                .skip(1)
                .map(|a| a.clone() * two.clone())
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs_value().to_f64()))
    }

    pub fn to_f64(&self) -> ChebSeries<f64> {
        ChebSeries::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }
}

impl ChebSeries<f64> {
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let two_x = x * 2.0;
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b2 = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            let b0 = two_x * b1 - b2 + a;
            b2 = b1;
            b1 = b0;
        }
        b1
    }
}

/// `U_k ↦ 2U_{k−1}`, the μ-derivative for the free operator's measure.
pub fn mu_derivative_cheb<T: Scalar>(f: &ChebSeries<T>) -> ChebSeries<T> {
    f.mu_derivative()
}

/// `f(λ(z))` as a Laurent polynomial in `z`.
pub fn cheb_to_joukowski<T: Scalar>(f: &ChebSeries<T>) -> LaurentPoly<T> {
    f.to_joukowski()
}
