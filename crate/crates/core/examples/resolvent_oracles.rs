//! Three independent evaluations of the principal resolvent: the p_C
//! formula, a continued fraction, and quadrature against the measure.

use num_complex::Complex64;
use jacobi_spectra::spectral::{resolvent, resolvent_continued_fraction, spectral_measure};
use jacobi_spectra::JacobiOperator;

fn main() -> jacobi_spectra::Result<()> {
    let op = JacobiOperator::new(1.0, 0.8, vec![2.5, -0.4, 1.0], vec![0.3, 1.1])?;
    let measure = spectral_measure(&op)?;
    println!("atoms: {:?}", measure.atoms().iter().map(|a| a.lambda).collect::<Vec<_>>());
    for lam in [Complex64::new(0.5, 1.0), Complex64::new(4.0, 0.0), Complex64::new(-2.0, 0.3)] {
        let g = resolvent(&op, lam)?;
        let cf = resolvent_continued_fraction(&op, lam, 8)?;
        let q = measure.stieltjes_oracle(lam)?;
        println!("λ = {lam}: G = {g:.12}  |G − cf| = {:.1e}  |G − quad| = {:.1e}", (g - cf).norm(), (g - q).norm());
    }
    Ok(())
}
