//! Truncations J^[m] of the Legendre operator: the density at 0 tends to
//! 1/2 and the first m orthonormal polynomials stay orthogonal.

use jacobi_spectra::operators::{legendre, truncate};
use jacobi_spectra::polynomials::orthonormal_values;
use jacobi_spectra::spectral::spectral_measure;

fn main() -> jacobi_spectra::Result<()> {
    let op = legendre(100)?;
    println!("{:>4} {:>12} {:>14} {:>12}", "m", "density(0)", "mass", "max |∫P_k|");
    for m in [1, 2, 3, 5, 10, 30, 100] {
        let jm = truncate(&op, m);
        let measure = spectral_measure(&jm)?;
        let moments = measure.integrate_many(|s| orthonormal_values(&jm, m, s));
        let worst = moments[1..].iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
        println!(
            "{m:>4} {:>12.8} {:>14.12} {:>12.2e}",
            measure.density_at(0.0)?,
            measure.total_mass(),
            worst
        );
    }
    Ok(())
}
