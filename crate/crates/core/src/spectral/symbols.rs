//! The polynomials `p_C` and `p_C^μ`.

use crate::connection::{
    cmu_from_coefficients, connection_dense_coeffs, Coefficients,
};
use crate::error::{Error, Result};
use crate::operators::JacobiOperator;
use crate::polynomials::{first_associated_cheb, orthonormal_cheb, ChebSeries, Poly};
use crate::scalar::Scalar;

/// Largest perturbation size accepted in floating arithmetic.
pub const MAX_FLOAT_SIZE: usize = 128;

/// Relative tolerance of the agreement check between the two formulas.
pub const DUAL_TOLERANCE: f64 = 1e-10;

fn check_float_size<T: Scalar>(n: usize) -> Result<()> {
    if !T::is_exact() && n > MAX_FLOAT_SIZE {
        return Err(Error::InvalidArgument(format!(
            "perturbation size {n} exceeds {MAX_FLOAT_SIZE} in floating mode; use exact arithmetic"
        )));
    }
    Ok(())
}

fn compare<T: Scalar>(
    what: &'static str,
    a: &ChebSeries<T>,
    b: &ChebSeries<T>,
    scale: f64,
) -> Result<()> {
    let diff = a.sub(b);
    if T::is_exact() {
        if !diff.is_zero() {
            return Err(Error::DualFormulaMismatch {
                what,
                discrepancy: diff.max_abs_coeff(),
            });
        }
        return Ok(());
    }
    let discrepancy = diff.max_abs_coeff();
    if discrepancy > DUAL_TOLERANCE * scale.max(1.0) {
        return Err(Error::DualFormulaMismatch { what, discrepancy });
    }
    Ok(())
}

/// `p_C` and `p_C^μ` in the `U_k` basis, each computed two ways and checked.
///
/// `p_C = Σ_k c_{0,k} P_k`, with the `P_k` generated by their recurrence, is
/// compared with `Σ_j ⟨e_j, CCᵀe_0⟩ U_j`; likewise `p_C^μ = Σ_k c_{0,k} P^μ_k`
/// against `Σ_j ⟨e_j, C^μCᵀe_0⟩ U_j`.
pub fn symbol_polynomials_in<T: Scalar>(
    coeffs: &Coefficients<T>,
) -> Result<(ChebSeries<T>, ChebSeries<T>)> {
    if !coeffs.is_normalized() {
        return Err(Error::InvalidOperator("coefficients are not normalised".into()));
    }
    let n = coeffs.size();
    check_float_size::<T>(n)?;
    if n == 0 {
        return Ok((ChebSeries::basis(0), ChebSeries::zero()));
    }
    let size = 2 * n;
    let free = Coefficients::from_operator(&JacobiOperator::free());
    let c = connection_dense_coeffs(coeffs, &free, size);
    let cmu = cmu_from_coefficients(coeffs)?.dense(size);
    let row0 = c.row(0);

    let alpha: Vec<T> = (0..size).map(|k| coeffs.diag(k)).collect();
    let beta: Vec<T> = (0..size).map(|k| coeffs.off(k)).collect();
    let ps = orthonormal_cheb(&alpha, &beta, size);
    let pms = first_associated_cheb(&alpha, &beta, size);

    let mut pc_a = ChebSeries::zero();
    let mut pm_a = ChebSeries::zero();
    for (k, c0k) in row0.iter().enumerate() {
        pc_a = pc_a.add(&ps[k].scale(c0k));
        pm_a = pm_a.add(&pms[k].scale(c0k));
    }

    let mut pc_b = Vec::with_capacity(size);
    let mut pm_b = Vec::with_capacity(size);
    let mut scale = 0.0_f64;
    for j in 0..size {
        let mut s = T::zero();
        let mut sm = T::zero();
        for (k, c0k) in row0.iter().enumerate() {
            s = s + c.get(j, k) * c0k.clone();
            sm = sm + cmu.get(j, k) * c0k.clone();
            let mag = c0k.abs_value().to_f64();
            scale = scale.max(mag * c.get(j, k).abs_value().to_f64());
            scale = scale.max(mag * cmu.get(j, k).abs_value().to_f64());
        }
        pc_b.push(s);
        pm_b.push(sm);
    }
    let pc_b = ChebSeries::new(pc_b);
    let pm_b = ChebSeries::new(pm_b);
    compare("p_C", &pc_a, &pc_b, scale * size as f64)?;
    compare("p_C^mu", &pm_a, &pm_b, scale * size as f64)?;
    Ok((pc_b, pm_b))
}

fn float_coeffs(op: &JacobiOperator) -> Result<Coefficients<f64>> {
    if !op.is_normalized() {
        return Err(Error::InvalidOperator(
            "p_C is defined for tail (0, 1/2); normalise first".into(),
        ));
    }
    Ok(Coefficients::from_operator(op))
}

/// `p_C` in the `U_k` basis.
pub fn p_c_cheb(op: &JacobiOperator) -> Result<ChebSeries<f64>> {
    Ok(symbol_polynomials_in(&float_coeffs(op)?)?.0)
}

/// `p_C^μ` in the `U_k` basis.
pub fn p_c_mu_cheb(op: &JacobiOperator) -> Result<ChebSeries<f64>> {
    Ok(symbol_polynomials_in(&float_coeffs(op)?)?.1)
}

/// `p_C` in the monomial basis.
pub fn p_c(op: &JacobiOperator) -> Result<Poly<f64>> {
    Ok(p_c_cheb(op)?.to_monomial())
}

/// `p_C^μ` in the monomial basis.
pub fn p_c_mu(op: &JacobiOperator) -> Result<Poly<f64>> {
    Ok(p_c_mu_cheb(op)?.to_monomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn close(a: &Poly, b: &[f64], tol: f64) -> bool {
        let n = a.coeffs().len().max(b.len());
        (0..n).all(|k| (a.coeff(k) - b.get(k).copied().unwrap_or(0.0)).abs() <= tol)
    }

    #[test]
    fn free_operator() {
        let d = JacobiOperator::free();
        assert_eq!(p_c(&d).unwrap(), Poly::one());
        assert!(p_c_mu(&d).unwrap().is_zero());
    }

    #[test]
    fn basic1() {
        let a = 0.7;
        let op = JacobiOperator::basic1(a).unwrap();
        // 1 − α(2λ − α)
        assert!(close(&p_c(&op).unwrap(), &[1.0 + a * a, -2.0 * a], 1e-15));
        assert!(close(&p_c_mu(&op).unwrap(), &[-2.0 * a], 1e-15));
    }

    #[test]
    fn basic2() {
        let b = 1.7f64;
        let op = JacobiOperator::basic2(b).unwrap();
        // 4(1 − β⁻²)(β⁴/(4(β² − 1)) − λ²)
        let k = 4.0 * (1.0 - 1.0 / (b * b));
        let expect = [k * b.powi(4) / (4.0 * (b * b - 1.0)), 0.0, -k];
        assert!(close(&p_c(&op).unwrap(), &expect, 1e-14));
        // c_{0,2} = β⁻¹ − β and P^μ_2 = 4β⁻¹λ
        let pm = p_c_mu(&op).unwrap();
        assert!(close(&pm, &[0.0, 4.0 * (1.0 / (b * b) - 1.0)], 1e-14), "{pm:?}");
    }

    #[test]
    fn basic2_reproduces_gamma_resolvent() {
        // β = √2: (G_Δ − p^μ)/p_C must be −1/(√(λ+1)√(λ−1))
        let op = JacobiOperator::basic2(2f64.sqrt()).unwrap();
        let (pc, pm) = (p_c(&op).unwrap(), p_c_mu(&op).unwrap());
        let lam = 1.25;
        let g_free = 2.0 * (lam * lam - 1.0f64).sqrt() - 2.0 * lam;
        let g = (g_free - pm.eval(&lam)) / pc.eval(&lam);
        assert!((g + 4.0 / 3.0).abs() < 1e-14, "{g}");
    }

    #[test]
    fn exact_dual_check_passes() {
        let op = JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75]).unwrap();
        let (pc, pm) =
            symbol_polynomials_in(&Coefficients::<BigRational>::from_operator(&op)).unwrap();
        let (fc, fm) = symbol_polynomials_in(&Coefficients::<f64>::from_operator(&op)).unwrap();
        assert!(pc.to_f64().sub(&fc).max_abs_coeff() < 1e-13);
        assert!(pm.to_f64().sub(&fm).max_abs_coeff() < 1e-13);
    }
}
