//! The rational example operator: exact connection coefficients, the
//! Toeplitz symbol, and certified eigenvalues.

use jacobi_spectra::connection::{connection_dense_exact, connection_structured_exact};
use jacobi_spectra::validated::validated_spectrum;
use jacobi_spectra::JacobiOperator;

fn main() -> jacobi_spectra::Result<()> {
    let op = JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75])?;

    let block = connection_dense_exact(&op, &JacobiOperator::free(), 6);
    println!("principal 6x6 block of C:");
    for row in block.rows() {
        let cells: Vec<String> = row.iter().map(|q| format!("{q:>7}")).collect();
        println!("  {}", cells.join(" "));
    }

    let c = connection_structured_exact(&op)?;
    let symbol: Vec<String> = c.toeplitz_coeffs().iter().map(|q| q.to_string()).collect();
    println!("symbol coefficients t_0..t_5: {}", symbol.join(", "));

    for e in validated_spectrum(&op, 1e-15)? {
        println!(
            "eigenvalue {:.16} in [{:e}, {:e}], radius {:e}",
            e.midpoint(),
            e.lambda_box.lo(),
            e.lambda_box.hi(),
            e.certified_radius
        );
    }
    Ok(())
}
