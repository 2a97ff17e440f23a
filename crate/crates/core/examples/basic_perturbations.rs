//! Rank-one and rank-two perturbations of Δ: where eigenvalues appear and
//! how much mass they carry.

use jacobi_spectra::spectral::{p_c, p_c_mu, spectral_measure};
use jacobi_spectra::JacobiOperator;

fn main() -> jacobi_spectra::Result<()> {
    println!("basic1: α_0 = α/2");
    for alpha in [0.5, 0.99, 1.5, 2.0] {
        let m = spectral_measure(&JacobiOperator::basic1(alpha)?)?;
        print!("  α = {alpha:<5} density(0) = {:.6}", m.density_at(0.0)?);
        for a in m.atoms() {
            print!("  atom λ = {:.12} w = {:.12} (limit {:.8})", a.lambda, a.weight, a.limit_weight);
        }
        println!();
    }

    println!("basic2: β_0 = β/2");
    for beta in [1.2, 2f64.sqrt(), 2.0] {
        let op = JacobiOperator::basic2(beta)?;
        let m = spectral_measure(&op)?;
        println!("  β = {beta:.6}  p_C = {:?}", p_c(&op)?.coeffs());
        println!("             p_C^μ = {:?}", p_c_mu(&op)?.coeffs());
        println!("             density(0) = {:.12}", m.density_at(0.0)?);
        for a in m.atoms() {
            println!("             atom λ = {:+.12} w = {:.12}", a.lambda, a.weight);
        }
    }
    Ok(())
}
