//! Principal resolvent `G(λ) = ⟨e_0, (J − λ)⁻¹ e_0⟩`.

use num_complex::Complex64;

use super::symbols::symbol_polynomials_in;
use crate::connection::{cmu_from_coefficients, structured_from_coefficients, Coefficients};
use crate::error::{Error, Result};
use crate::operators::{normalize_to_free, AffineMap, JacobiOperator};
use crate::polynomials::{ChebSeries, Poly};

fn on_cut(lambda: Complex64) -> bool {
    lambda.im == 0.0 && lambda.re.abs() <= 1.0
}

/// `√(λ+1)√(λ−1)` with principal square roots; `~λ` at infinity.
fn branch_root(lambda: Complex64) -> Complex64 {
    (lambda + 1.0).sqrt() * (lambda - 1.0).sqrt()
}

/// `λ(z) = (z + 1/z)/2`.
pub fn joukowski(z: Complex64) -> Complex64 {
    (z + z.inv()) * 0.5
}

/// The preimage of `λ` under the Joukowski map inside the unit disc,
/// `z = λ − √(λ+1)√(λ−1)`.
pub fn joukowski_inverse(lambda: Complex64) -> Result<Complex64> {
    if on_cut(lambda) {
        return Err(Error::CutEvaluation { at: lambda });
    }
    // (λ + s)(λ − s) = 1, and λ + s avoids cancellation
    Ok((lambda + branch_root(lambda)).inv())
}

/// `G_Δ(λ) = 2√(λ+1)√(λ−1) − 2λ`, evaluated as `−2/(λ + √(λ+1)√(λ−1))`.
pub fn resolvent_free(lambda: Complex64) -> Result<Complex64> {
    Ok(joukowski_inverse(lambda)? * -2.0)
}

/// Everything needed to evaluate `G` repeatedly for one operator.
#[derive(Debug, Clone)]
pub struct Resolvent {
    map: AffineMap,
    c: Poly<f64>,
    cmu: Poly<f64>,
    pc: ChebSeries<f64>,
    pc_mu: ChebSeries<f64>,
}

impl Resolvent {
    /// Normalises `J` and builds `c`, `c_μ`, `p_C` and `p_C^μ`.
    pub fn new(op: &JacobiOperator) -> Result<Self> {
        let (norm, map) = normalize_to_free(op);
        let coeffs = Coefficients::<f64>::from_operator(&norm);
        let c = structured_from_coefficients(&coeffs)?.symbol();
        let cmu = cmu_from_coefficients(&coeffs)?.symbol();
        let (pc, pc_mu) = symbol_polynomials_in(&coeffs)?;
        Ok(Self {
            map,
            c,
            cmu,
            pc,
            pc_mu,
        })
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    /// Toeplitz symbol `c`.
    pub fn symbol(&self) -> &Poly<f64> {
        &self.c
    }

    /// Symbol `c_μ` of the μ-connection matrix.
    pub fn symbol_mu(&self) -> &Poly<f64> {
        &self.cmu
    }

    pub fn p_c(&self) -> &ChebSeries<f64> {
        &self.pc
    }

    pub fn p_c_mu(&self) -> &ChebSeries<f64> {
        &self.pc_mu
    }

    /// `|c(z)|` relative to the size of its terms.
    fn relative_size(p: &Poly<f64>, z: Complex64) -> f64 {
        let value = p.eval_complex(z).norm();
        let r = z.norm();
        let terms = p
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.abs());
        if terms == 0.0 {
            0.0
        } else {
            value / terms
        }
    }

    /// `G` in normalised coordinates.
    fn eval_normalized(&self, lambda: Complex64, user: Complex64) -> Result<Complex64> {
        if on_cut(lambda) {
            return Err(Error::CutEvaluation { at: user });
        }
        let z = joukowski_inverse(lambda)?;
        if Self::relative_size(&self.c, z) < 1e-14 {
            return Err(Error::Pole { at: user });
        }
        // p_C(λ(z)) = c(z)c(1/z): when c(1/z) nearly vanishes the quotient
        // below is 0/0, and the disc form is used instead
        let zi = z.inv();
        let value = if z.norm() > 0.0 && Self::relative_size(&self.c, zi) < 1e-6 {
            -self.cmu.eval_complex(z) / self.c.eval_complex(z)
        } else {
            let g_free = z * -2.0;
            (g_free - self.pc_mu.eval_complex(lambda)) / self.pc.eval_complex(lambda)
        };
        if !value.is_finite() {
            return Err(Error::Pole { at: user });
        }
        Ok(value)
    }

    /// `G(λ) = (G_Δ(λ) − p_C^μ(λ)) / p_C(λ)` in the operator's coordinates.
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        let norm = self.map.to_normalized_complex(lambda);
        Ok(self.eval_normalized(norm, lambda)? * self.map.scale)
    }

    /// `G(λ(z)) = −c_μ(z)/c(z)`.
    ///
    /// Values for `|z| ≥ 1` are the analytic continuation of that rational
    /// function and are not resolvent values; see [`Resolvent::eval_disc_flagged`].
    pub fn eval_disc(&self, z: Complex64) -> Result<Complex64> {
        let cz = self.c.eval_complex(z);
        if Self::relative_size(&self.c, z) < 1e-14 {
            return Err(Error::Pole {
                at: self.map.to_user_complex(if z.norm() > 0.0 {
                    joukowski(z)
                } else {
                    Complex64::new(f64::INFINITY, 0.0)
                }),
            });
        }
        let value = -self.cmu.eval_complex(z) / cz * self.map.scale;
        if !value.is_finite() {
            return Err(Error::Pole { at: z });
        }
        Ok(value)
    }

    /// [`Resolvent::eval_disc`] together with whether `z` lies in the open
    /// unit disc, where the value is certified to be the resolvent.
    pub fn eval_disc_flagged(&self, z: Complex64) -> Result<(Complex64, bool)> {
        Ok((self.eval_disc(z)?, z.norm() < 1.0))
    }
}

/// `G(λ)` for `J`.
pub fn resolvent(op: &JacobiOperator, lambda: Complex64) -> Result<Complex64> {
    Resolvent::new(op)?.eval(lambda)
}

/// `G(λ(z))` via `−c_μ(z)/c(z)`; for a non-normalised `J`, `λ(z)` is read in
/// normalised coordinates and the value scaled back.
pub fn disc_resolvent(op: &JacobiOperator, z: Complex64) -> Result<Complex64> {
    Resolvent::new(op)?.eval_disc(z)
}

/// `G(λ) = −1/(λ − α_0 − β_0²/(λ − α_1 − …))`, evaluated from level `depth`
/// upward with the tail closed by the exact resolvent of the Toeplitz tail.
///
/// The closure is exact once `depth ≥ n`; below that it replaces the
/// remaining perturbation by the tail.
pub fn resolvent_continued_fraction(
    op: &JacobiOperator,
    lambda: Complex64,
    depth: usize,
) -> Result<Complex64> {
    if depth == 0 {
        return Err(Error::InvalidArgument("continued fraction depth must be positive".into()));
    }
    let sigma = 1.0 / (2.0 * op.tail_off());
    let tail_arg = (lambda - op.tail_diag()) * sigma;
    if on_cut(tail_arg) {
        return Err(Error::CutEvaluation { at: lambda });
    }
    let mut g = resolvent_free(tail_arg)? * sigma;
    for k in (0..depth).rev() {
        let b = op.off(k);
        let pivot = Complex64::new(op.diag(k), 0.0) - lambda - g * (b * b);
        if pivot.norm() == 0.0 || !pivot.is_finite() {
            return Err(Error::ZeroPivot { level: k });
        }
        g = pivot.inv();
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_values() {
        assert!((resolvent_free(c(1.25, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let two = resolvent_free(c(2.0, 0.0)).unwrap();
        assert!((two - c(2.0 * 3f64.sqrt() - 4.0, 0.0)).norm() < 1e-15);
        assert!(matches!(resolvent_free(c(0.3, 0.0)), Err(Error::CutEvaluation { .. })));
        let neg = resolvent_free(c(-2.0, 0.0)).unwrap();
        assert!((neg + two).norm() < 1e-15);
        // −1/λ decay
        let far = c(0.0, 1e6);
        assert!((resolvent_free(far).unwrap() * far + 1.0).norm() < 1e-10);
    }

    #[test]
    fn herglotz() {
        for (re, im) in [(0.0, 0.1), (0.9, 1e-3), (-3.0, 2.0)] {
            assert!(resolvent_free(c(re, im)).unwrap().im > 0.0);
        }
    }

    #[test]
    fn free_and_gamma() {
        let d = JacobiOperator::free();
        assert!((resolvent(&d, c(1.25, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let g = JacobiOperator::gamma();
        let v = resolvent(&g, c(1.25, 0.0)).unwrap();
        assert!((v - c(-4.0 / 3.0, 0.0)).norm() < 1e-14, "{v}");
        let cf = resolvent_continued_fraction(&g, c(2.0, 0.0), 4).unwrap();
        assert!((cf - c(-1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn disc_form() {
        let d = JacobiOperator::free();
        assert!((disc_resolvent(&d, c(0.3, 0.0)).unwrap() - c(-0.6, 0.0)).norm() < 1e-15);
        let a = 2.0;
        let op = JacobiOperator::basic1(a).unwrap();
        let z = c(0.2, 0.3);
        let expect = -z * 2.0 / (c(1.0, 0.0) - z * a);
        assert!((disc_resolvent(&op, z).unwrap() - expect).norm() < 1e-14);
        assert_eq!(disc_resolvent(&op, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(matches!(disc_resolvent(&op, c(0.5, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn eigenvalue_is_a_pole() {
        let op = JacobiOperator::basic1(2.0).unwrap();
        assert!(matches!(resolvent(&op, c(1.25, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn shifted_operator_scales() {
        // J = 3 + 2·basic1(2): G_J(λ) = ½ G_basic1((λ − 3)/2)
        let op = JacobiOperator::new(3.0, 1.0, vec![5.0], vec![]).unwrap();
        let base = JacobiOperator::basic1(2.0).unwrap();
        let lam = c(4.0, 1.5);
        let want = resolvent(&base, (lam - 3.0) * 0.5).unwrap() * 0.5;
        assert!((resolvent(&op, lam).unwrap() - want).norm() < 1e-14);
        let cf = resolvent_continued_fraction(&op, lam, 3).unwrap();
        assert!((cf - want).norm() < 1e-14);
    }
}
