//! Connection coefficient matrices between Jacobi operators.
//!
//! `C_{J→D}` is the upper-triangular change of basis taking the orthonormal
//! polynomials of `J` to those of `D`. When `D = Δ` and `J` differs from Δ in
//! its first `n` rows, `C` is Toeplitz plus a finite block and everything
//! downstream is read off the Toeplitz symbol.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::operators::JacobiOperator;
use crate::polynomials::Poly;
use crate::scalar::Scalar;

/// Principal `N × N` block of an upper-triangular matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUpperTriangular<T = f64> {
    size: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseUpperTriangular<T> {
    fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![T::zero(); size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry `(i, j)`; zero below the diagonal.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.size + j].clone()
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.size + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.size..(i + 1) * self.size].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.size).map(|i| self.get(i, j)).collect()
    }

    /// Matrix product of two blocks of equal size.
    ///
    /// Upper-triangular blocks multiply exactly: the principal block of a
    /// product is the product of the principal blocks.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size, "block sizes differ");
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = T::zero();
                for k in i..=j {
                    acc = acc + self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs_value().to_f64()))
    }

    pub fn to_f64(&self) -> DenseUpperTriangular<f64> {
        DenseUpperTriangular {
            size: self.size,
            data: self.data.iter().map(|c| c.to_f64()).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.size).map(|i| self.row(i)).collect()
    }
}

/// Recurrence coefficients of a Toeplitz-plus-finite operator in a field `T`.
///
/// This is how exact arithmetic enters: a float operator converts entry by
/// entry without rounding, and [`Coefficients::normalized`] carries out
/// the shift and scaling to tail `(0, 1/2)` in rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
    pub tail_diag: T,
    pub tail_off: T,
}

impl<T: Scalar> Coefficients<T> {
    pub fn from_operator(op: &JacobiOperator) -> Self {
        Self {
            diag: op.pert_diag().iter().map(|&x| T::from_f64_exact(x)).collect(),
            off: op.pert_off().iter().map(|&x| T::from_f64_exact(x)).collect(),
            tail_diag: T::from_f64_exact(op.tail_diag()),
            tail_off: T::from_f64_exact(op.tail_off()),
        }
    }

    /// Coefficients of `(J − τI)/(2b∞)`, exact when `T` is.
    pub fn normalized(op: &JacobiOperator) -> Self {
        let raw = Self::from_operator(op);
        let two = T::one() + T::one();
        let scale = T::one() / (two.clone() * raw.tail_off.clone());
        let tau = raw.tail_diag.clone();
        Self {
            diag: raw
                .diag
                .iter()
                .map(|a| (a.clone() - tau.clone()) * scale.clone())
                .collect(),
            off: raw.off.iter().map(|b| b.clone() * scale.clone()).collect(),
            tail_diag: T::zero(),
            tail_off: T::one() / two,
        }
    }

    /// Perturbation size `n`.
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self, k: usize) -> T {
        self.diag.get(k).cloned().unwrap_or_else(|| self.tail_diag.clone())
    }

    pub fn off(&self, k: usize) -> T {
        self.off.get(k).cloned().unwrap_or_else(|| self.tail_off.clone())
    }

    pub fn is_normalized(&self) -> bool {
        self.tail_diag.is_zero() && self.tail_off.clone() + self.tail_off.clone() == T::one()
    }

    /// First row and column deleted, re-trimmed to canonical size.
    pub fn without_first_row(&self) -> Self {
        let mut diag: Vec<T> = self.diag.iter().skip(1).cloned().collect();
        let mut off: Vec<T> = self.off.iter().skip(1).cloned().collect();
        while off.last().is_some_and(|b| *b == self.tail_off) {
            off.pop();
        }
        let keep = diag
            .iter()
            .rposition(|a| *a != self.tail_diag)
            .map_or(0, |i| i + 1)
            .max(if off.is_empty() { 0 } else { off.len() + 1 });
        diag.truncate(keep);
        off.truncate(keep.saturating_sub(1));
        Self {
            diag,
            off,
            tail_diag: self.tail_diag.clone(),
            tail_off: self.tail_off.clone(),
        }
    }

    /// `3(max|α_k − a∞| + max|β_k − b∞|)` as a float upper bound.
    pub fn perturbation_norm_bound(&self) -> f64 {
        let diag = self.diag.iter().fold(T::zero(), |m, a| {
            let d = (a.clone() - self.tail_diag.clone()).abs_value();
            if d > m {
                d
            } else {
                m
            }
        });
        let off = self.off.iter().fold(T::zero(), |m, b| {
            let d = (b.clone() - self.tail_off.clone()).abs_value();
            if d > m {
                d
            } else {
                m
            }
        });
        let bound = (diag + off).to_f64() * 3.0;
        // one ulp of slack covers the final conversion and product
        bound.next_up().next_up()
    }
}

/// Principal `N × N` block of `C_{J→D}` by the column recurrence
///
/// `c_{i,j} = (δ_{i−1}c_{i−1,j−1} + (γ_i − α_{j−1})c_{i,j−1} + δ_i c_{i+1,j−1} − β_{j−2}c_{i,j−2}) / β_{j−1}`
///
/// where `J = (α, β)` and `D = (γ, δ)`.
pub fn connection_dense_coeffs<T: Scalar>(
    source: &Coefficients<T>,
    target: &Coefficients<T>,
    size: usize,
) -> DenseUpperTriangular<T> {
    let mut c = DenseUpperTriangular::<T>::zeros(size);
    if size == 0 {
        return c;
    }
    c.set(0, 0, T::one());
    for j in 1..size {
        let b_prev = source.off(j - 1);
        let a_prev = source.diag(j - 1);
        let b_prev2 = if j >= 2 { source.off(j - 2) } else { T::zero() };
        for i in 0..=j {
            let mut acc = T::zero();
            if i >= 1 {
                acc = acc + target.off(i - 1) * c.get(i - 1, j - 1);
            }
            if i < j {
                acc = acc + (target.diag(i) - a_prev.clone()) * c.get(i, j - 1);
            }
            if i + 1 < j {
                acc = acc + target.off(i) * c.get(i + 1, j - 1);
            }
            if j >= 2 && i <= j - 2 {
                acc = acc - b_prev2.clone() * c.get(i, j - 2);
            }
            c.set(i, j, acc / b_prev.clone());
        }
    }
    c
}

pub fn connection_dense_in<T: Scalar>(
    source: &JacobiOperator,
    target: &JacobiOperator,
    size: usize,
) -> DenseUpperTriangular<T> {
    connection_dense_coeffs(
        &Coefficients::from_operator(source),
        &Coefficients::from_operator(target),
        size,
    )
}

pub fn connection_dense(
    source: &JacobiOperator,
    target: &JacobiOperator,
    size: usize,
) -> DenseUpperTriangular<f64> {
    connection_dense_in(source, target, size)
}

/// Exact rational block; every finite float entry is a dyadic rational.
pub fn connection_dense_exact(
    source: &JacobiOperator,
    target: &JacobiOperator,
    size: usize,
) -> DenseUpperTriangular<BigRational> {
    connection_dense_in(source, target, size)
}

/// Block of `C_{D→J}`, the inverse of `C_{J→D}`.
pub fn connection_inverse_block(
    source: &JacobiOperator,
    target: &JacobiOperator,
    size: usize,
) -> DenseUpperTriangular<f64> {
    connection_dense(target, source, size)
}

/// Toeplitz-plus-finite connection matrix `C = C_Toe + C_fin` into Δ.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionMatrix<T = f64> {
    n: usize,
    toeplitz: Vec<T>,
    finite: Vec<Vec<T>>,
}

impl<T: Scalar> ConnectionMatrix<T> {
    /// Perturbation size of the source operator.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Symbol coefficients `t_0, t_1, …` (untrimmed).
    pub fn toeplitz_coeffs(&self) -> &[T] {
        &self.toeplitz
    }

    /// The symbol as a polynomial.
    pub fn symbol(&self) -> Poly<T> {
        Poly::new(self.toeplitz.clone())
    }

    /// Rows of the finite correction block.
    pub fn finite(&self) -> &[Vec<T>] {
        &self.finite
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        let mut v = if j >= i {
            self.toeplitz.get(j - i).cloned().unwrap_or_else(T::zero)
        } else {
            T::zero()
        };
        if let Some(x) = self.finite.get(i).and_then(|row| row.get(j)) {
            v = v + x.clone();
        }
        v
    }

    /// Principal `size × size` block.
    pub fn dense(&self, size: usize) -> DenseUpperTriangular<T> {
        let mut out = DenseUpperTriangular::zeros(size);
        for i in 0..size {
            for j in i..size {
                out.set(i, j, self.entry(i, j));
            }
        }
        out
    }

    pub fn to_f64(&self) -> ConnectionMatrix<f64> {
        ConnectionMatrix {
            n: self.n,
            toeplitz: self.toeplitz.iter().map(|c| c.to_f64()).collect(),
            finite: self
                .finite
                .iter()
                .map(|row| row.iter().map(|c| c.to_f64()).collect())
                .collect(),
        }
    }
}

fn require_normalized(op: &JacobiOperator) -> Result<()> {
    if op.is_normalized() {
        Ok(())
    } else {
        Err(Error::InvalidOperator(
            "structured connection matrices need tail (0, 1/2); normalise first".into(),
        ))
    }
}

/// Relative tolerance of the structure check in floating arithmetic.
pub const STRUCTURE_TOLERANCE: f64 = 1e-10;

/// Structured `C_{J→Δ}` from the principal `2n × 2n` block.
///
/// The symbol is read off the last column, `t_{2n−1−i} = c_{i,2n−1}`, and the
/// finite block lives in rows `0..n−1`, columns `0..2n−2`. Before returning,
/// the block is checked against `c_{i,j} = c_{i−1,j−1}` for `i + j ≥ 2n` and
/// against the support of the finite part.
pub fn connection_structured_in<T: Scalar>(op: &JacobiOperator) -> Result<ConnectionMatrix<T>> {
    require_normalized(op)?;
    structured_from_coefficients(&Coefficients::from_operator(op))
}

/// [`connection_structured_in`] for coefficients already normalised.
pub fn structured_from_coefficients<T: Scalar>(
    coeffs: &Coefficients<T>,
) -> Result<ConnectionMatrix<T>> {
    if !coeffs.is_normalized() {
        return Err(Error::InvalidOperator("coefficients are not normalised".into()));
    }
    let n = coeffs.size();
    if n == 0 {
        return Ok(ConnectionMatrix {
            n,
            toeplitz: vec![T::one()],
            finite: Vec::new(),
        });
    }
    let size = 2 * n;
    let free = Coefficients::from_operator(&JacobiOperator::free());
    let dense = connection_dense_coeffs(coeffs, &free, size);
    let toeplitz: Vec<T> = (0..size).map(|k| dense.get(size - 1 - k, size - 1)).collect();

    let tolerance = if T::is_exact() {
        0.0
    } else {
        STRUCTURE_TOLERANCE * dense.max_abs().max(1.0)
    };
    let mut worst = 0.0_f64;
    let mut note = |x: T| worst = worst.max(x.abs_value().to_f64());
    let mut exact_violation = false;

    for i in 1..size {
        for j in i..size {
            if i + j >= size {
                let d = dense.get(i, j) - dense.get(i - 1, j - 1);
                exact_violation |= !d.is_zero();
                note(d);
            }
        }
    }
    let rows = n - 1;
    let cols = size - 2;
    let mut finite = vec![vec![T::zero(); cols]; rows];
    for i in 0..size {
        for j in i..size {
            let f = dense.get(i, j) - toeplitz[j - i].clone();
            if i < rows && j < cols {
                finite[i][j] = f;
            } else {
                exact_violation |= !f.is_zero();
                note(f);
            }
        }
    }
    if worst > tolerance || (T::is_exact() && exact_violation) {
        return Err(Error::StructureViolation {
            max_violation: worst,
            tolerance,
        });
    }
    Ok(ConnectionMatrix {
        n,
        toeplitz,
        finite,
    })
}

pub fn connection_structured(op: &JacobiOperator) -> Result<ConnectionMatrix<f64>> {
    connection_structured_in(op)
}

pub fn connection_structured_exact(op: &JacobiOperator) -> Result<ConnectionMatrix<BigRational>> {
    connection_structured_in(op)
}

/// Structured `C^μ = β_0⁻¹ (0, C_{J^μ→Δ})`, `J^μ` being `J` without its first
/// row and column. Its symbol `c_μ` has zero constant term.
pub fn cmu_structured_in<T: Scalar>(op: &JacobiOperator) -> Result<ConnectionMatrix<T>> {
    require_normalized(op)?;
    cmu_from_coefficients(&Coefficients::from_operator(op))
}

/// [`cmu_structured_in`] for coefficients already normalised.
pub fn cmu_from_coefficients<T: Scalar>(coeffs: &Coefficients<T>) -> Result<ConnectionMatrix<T>> {
    let inner = structured_from_coefficients(&coeffs.without_first_row())?;
    let scale = T::one() / coeffs.off(0);
    let mut toeplitz = vec![T::zero()];
    toeplitz.extend(inner.toeplitz.iter().map(|t| t.clone() * scale.clone()));
    let finite = inner
        .finite
        .iter()
        .map(|row| {
            let mut r = vec![T::zero()];
            r.extend(row.iter().map(|f| f.clone() * scale.clone()));
            r
        })
        .collect();
    Ok(ConnectionMatrix {
        n: coeffs.size(),
        toeplitz,
        finite,
    })
}

pub fn cmu_structured(op: &JacobiOperator) -> Result<ConnectionMatrix<f64>> {
    cmu_structured_in(op)
}

pub fn cmu_structured_exact(op: &JacobiOperator) -> Result<ConnectionMatrix<BigRational>> {
    cmu_structured_in(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn explicit() -> JacobiOperator {
        JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75]).unwrap()
    }

    #[test]
    fn free_to_free_is_identity() {
        let d = JacobiOperator::free();
        let c = connection_dense(&d, &d, 8);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(c.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn basic1_is_bidiagonal() {
        let alpha = 0.7;
        let op = JacobiOperator::basic1(alpha).unwrap();
        let c = connection_dense(&op, &JacobiOperator::free(), 8);
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j {
                    1.0
                } else if j == i + 1 {
                    -alpha
                } else {
                    0.0
                };
                assert!((c.get(i, j) - expect).abs() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn explicit_rows_exact() {
        let c = connection_dense_exact(&explicit(), &JacobiOperator::free(), 7);
        let row0 = [(1, 1), (-3, 4), (-5, 4), (49, 24), (-1, 12), (-1, 3), (0, 1)];
        for (j, &(p, q)) in row0.iter().enumerate() {
            assert_eq!(c.get(0, j), ratio(p, q));
        }
        let row1 = [(0, 1), (1, 2), (-1, 3), (-4, 3), (41, 24), (-1, 12), (-1, 3)];
        for (j, &(p, q)) in row1.iter().enumerate() {
            assert_eq!(c.get(1, j), ratio(p, q));
        }
    }

    #[test]
    fn explicit_structure() {
        let cm = connection_structured_exact(&explicit()).unwrap();
        let t = [(1, 3), (-2, 3), (-4, 3), (41, 24), (-1, 12), (-1, 3)];
        for (k, &(p, q)) in t.iter().enumerate() {
            assert_eq!(cm.toeplitz_coeffs()[k], ratio(p, q));
        }
        let dense = connection_dense_exact(&explicit(), &JacobiOperator::free(), 12);
        assert_eq!(cm.dense(12), dense);
    }

    #[test]
    fn basic2_symbol() {
        let beta = 2.0;
        let cm = connection_structured(&JacobiOperator::basic2(beta).unwrap()).unwrap();
        let t = cm.toeplitz_coeffs();
        assert!((t[0] - 1.0 / beta).abs() < 1e-15);
        assert!(t[1].abs() < 1e-15);
        assert!((t[2] - (1.0 / beta - beta)).abs() < 1e-15);
        assert!((cm.finite()[0][0] - (1.0 - 1.0 / beta)).abs() < 1e-15);
    }

    #[test]
    fn free_symbols() {
        let d = JacobiOperator::free();
        let c = connection_structured(&d).unwrap();
        assert_eq!(c.symbol(), Poly::one());
        assert!(c.finite().is_empty());
        let cmu = cmu_structured(&d).unwrap();
        assert_eq!(cmu.symbol(), Poly::new(vec![0.0, 2.0]));
        let cmu = cmu_structured(&JacobiOperator::basic1(2.0).unwrap()).unwrap();
        assert_eq!(cmu.symbol(), Poly::new(vec![0.0, 2.0]));
    }

    #[test]
    fn inverse_blocks() {
        let d = JacobiOperator::free();
        let alpha = 0.6;
        let inv = connection_inverse_block(&JacobiOperator::basic1(alpha).unwrap(), &d, 6);
        for j in 0..6 {
            assert!((inv.get(0, j) - alpha.powi(j as i32)).abs() < 1e-15);
            assert!((inv.get(2, j) - if j >= 2 { alpha.powi(j as i32 - 2) } else { 0.0 }).abs() < 1e-15);
        }
        let beta = 1.3f64;
        let inv = connection_inverse_block(&JacobiOperator::basic2(beta).unwrap(), &d, 7);
        let expect = [1.0, 0.0, beta * beta - 1.0, 0.0, (beta * beta - 1.0).powi(2), 0.0];
        for (j, e) in expect.iter().enumerate() {
            assert!((inv.get(0, j) - e).abs() < 1e-14, "j = {j}");
        }
    }

    #[test]
    fn exact_normalization_matches_float_when_exact() {
        // tail (1, 1): normalisation is (J − I)/2, exact in binary
        let op = JacobiOperator::new(1.0, 1.0, vec![2.0, 0.5], vec![1.5]).unwrap();
        let (norm, _) = crate::operators::normalize_to_free(&op);
        let exact = Coefficients::<BigRational>::normalized(&op);
        assert_eq!(exact, Coefficients::from_operator(&norm));
        let a = structured_from_coefficients(&exact).unwrap();
        assert_eq!(a, connection_structured_exact(&norm).unwrap());
    }

    #[test]
    fn without_first_row_trims() {
        let c = Coefficients::<f64>::from_operator(&JacobiOperator::basic2(2.0).unwrap());
        let inner = c.without_first_row();
        assert_eq!(inner.size(), 0);
        let e = Coefficients::<f64>::from_operator(&explicit()).without_first_row();
        assert_eq!(e.diag, vec![-0.25, 0.5]);
        assert_eq!(e.off, vec![0.75]);
    }

    #[test]
    fn rejects_unnormalized() {
        let op = JacobiOperator::new(1.0, 1.0, vec![2.0], vec![]).unwrap();
        assert!(matches!(connection_structured(&op), Err(Error::InvalidOperator(_))));
    }
}
