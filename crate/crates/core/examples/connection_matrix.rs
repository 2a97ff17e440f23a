//! Structure of connection coefficient matrices: Toeplitz plus a finite
//! block, and the identity linking the symbols c and c_μ.

use jacobi_spectra::connection::{cmu_structured, connection_dense, connection_structured};
use jacobi_spectra::polynomials::LaurentPoly;
use jacobi_spectra::JacobiOperator;

fn main() -> jacobi_spectra::Result<()> {
    let op = JacobiOperator::perturbed_free(vec![0.3, -0.6], vec![0.9])?;
    let c = connection_structured(&op)?;
    let cmu = cmu_structured(&op)?;
    println!("n = {}", c.n());
    println!("c   = {:?}", c.toeplitz_coeffs());
    println!("c_μ = {:?}", cmu.toeplitz_coeffs());

    // the structured form reproduces the recurrence
    let dense = connection_dense(&op, &JacobiOperator::free(), 12);
    let mut worst = 0.0_f64;
    for i in 0..12 {
        for j in 0..12 {
            worst = worst.max((dense.get(i, j) - c.entry(i, j)).abs());
        }
    }
    println!("max |dense − structured| on 12x12: {worst:e}");

    // c(1/z)c_μ(z) − c(z)c_μ(1/z) = 2(z − 1/z)
    let (s, smu) = (c.symbol(), cmu.symbol());
    let lhs = &(&s.reflect() * &LaurentPoly::from_poly(&smu))
        - &(&LaurentPoly::from_poly(&s) * &smu.reflect());
    let rhs = &LaurentPoly::monomial(1, 2.0) - &LaurentPoly::monomial(-1, 2.0);
    println!("Wronskian residual: {:e}", (&lhs - &rhs).max_abs_coeff());
    Ok(())
}
