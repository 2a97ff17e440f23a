//! Three-term recurrences for the orthonormal and first associated
//! polynomials of a Jacobi operator.

use num_complex::Complex64;

use super::poly::ChebSeries;
use crate::operators::JacobiOperator;
use crate::scalar::Scalar;

/// `α_0..α_{len−1}` and `β_0..β_{len−1}` converted exactly into `T`.
pub fn entries<T: Scalar>(op: &JacobiOperator, len: usize) -> (Vec<T>, Vec<T>) {
    let alpha = (0..len).map(|k| T::from_f64_exact(op.diag(k))).collect();
    let beta = (0..len).map(|k| T::from_f64_exact(op.off(k))).collect();
    (alpha, beta)
}

/// `P_k(s)` by forward recurrence from `P_{−1} = 0`, `P_0 = 1`.
///
/// Forward recurrence loses relative accuracy for `k` in the thousands;
/// the library only needs `k ≤ 2n`.
pub fn eval_orthonormal(op: &JacobiOperator, k: usize, s: Complex64) -> Complex64 {
    run_recurrence(op, k, s, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 0)
}

/// `P^μ_k(λ)` with `P^μ_0 = 0`, `P^μ_1 = 1/β_0`.
pub fn eval_first_associated(op: &JacobiOperator, k: usize, lambda: Complex64) -> Complex64 {
    if k == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let p1 = Complex64::new(1.0 / op.off(0), 0.0);
    run_recurrence(op, k - 1, lambda, Complex64::new(0.0, 0.0), p1, 1)
}

/// Advance `steps` times from `(prev, cur) = (P_{start−1}, P_start)`.
fn run_recurrence(
    op: &JacobiOperator,
    steps: usize,
    s: Complex64,
    mut prev: Complex64,
    mut cur: Complex64,
    start: usize,
) -> Complex64 {
    for j in start..start + steps {
        let back = if j == 0 { 0.0 } else { op.off(j - 1) };
        let next = ((s - op.diag(j)) * cur - prev * back) / op.off(j);
        prev = cur;
        cur = next;
    }
    cur
}

/// All `P_0..P_{count−1}` as real values at `s`.
pub fn orthonormal_values(op: &JacobiOperator, count: usize, s: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..count {
        out.push(cur);
        let back = if j == 0 { 0.0 } else { op.off(j - 1) };
        let next = ((s - op.diag(j)) * cur - back * prev) / op.off(j);
        prev = cur;
        cur = next;
    }
    out
}

/// `P_0..P_{count−1}` expanded in `U_k`, from the recurrence coefficients.
pub fn orthonormal_cheb<T: Scalar>(alpha: &[T], beta: &[T], count: usize) -> Vec<ChebSeries<T>> {
    cheb_recurrence(alpha, beta, count, ChebSeries::zero(), ChebSeries::basis(0), 0)
}

/// `P^μ_0..P^μ_{count−1}` expanded in `U_k`.
pub fn first_associated_cheb<T: Scalar>(
    alpha: &[T],
    beta: &[T],
    count: usize,
) -> Vec<ChebSeries<T>> {
    if count == 0 {
        return Vec::new();
    }
    let mut out = vec![ChebSeries::zero()];
    let p1 = ChebSeries::basis(0).scale(&(T::one() / beta[0].clone()));
    out.extend(cheb_recurrence(alpha, beta, count - 1, ChebSeries::zero(), p1, 1));
    out
}

fn cheb_recurrence<T: Scalar>(
    alpha: &[T],
    beta: &[T],
    count: usize,
    mut prev: ChebSeries<T>,
    mut cur: ChebSeries<T>,
    start: usize,
) -> Vec<ChebSeries<T>> {
    let mut out = Vec::with_capacity(count);
    for j in start..start + count {
        out.push(cur.clone());
        if j + 1 == start + count {
            break;
        }
        let mut next = cur.mul_x().sub(&cur.scale(&alpha[j]));
        if j > 0 {
            next = next.sub(&prev.scale(&beta[j - 1]));
        }
        next = next.scale(&(T::one() / beta[j].clone()));
        prev = std::mem::replace(&mut cur, next);
    }
    out
}
