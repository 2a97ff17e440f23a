//! Certified enclosures at several tolerances for a random rank-4
//! perturbation, with bit-exact hex bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jacobi_spectra::validated::{parse_hex, validated_spectrum};
use jacobi_spectra::JacobiOperator;

fn main() -> jacobi_spectra::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let diag: Vec<f64> = (0..4).map(|_| rng.random_range(-1.5..1.5)).collect();
    let off: Vec<f64> = (0..3).map(|_| rng.random_range(0.1..1.5)).collect();
    let op = JacobiOperator::perturbed_free(diag, off)?;
    println!("operator: {}", op.to_json());

    for eps in [1e-3, 1e-8, 1e-14] {
        println!("eps = {eps:e}");
        for e in validated_spectrum(&op, eps)? {
            let r = e.record();
            assert_eq!(parse_hex(&r.lo)?, e.lambda_box.lo());
            println!("  {:+.17} ± {:.2e}   [{}, {}]", r.midpoint, r.radius, r.lo, r.hi);
        }
    }
    Ok(())
}
