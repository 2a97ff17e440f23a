//! Discrete Schrödinger operator with a decaying random potential: a compact
//! perturbation of Δ handled by truncation.

use jacobi_spectra::operators::{schrodinger_random, schrodinger_tail_bound};
use jacobi_spectra::spectral::spectral_measure;
use jacobi_spectra::validated::spectrum_compact;

fn main() -> jacobi_spectra::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let op = schrodinger_random(seed, 400);

    let eps = 1e-2;
    let s = spectrum_compact(&op, schrodinger_tail_bound, eps)?;
    println!("seed {seed}: truncation m = {} for ε = {eps:e}", s.truncation);
    for e in &s.enclosures {
        println!("  eigenvalue {:+.10} ± {:.1e}", e.midpoint(), e.certified_radius);
    }

    let m = spectral_measure(&jacobi_spectra::operators::truncate(&op, s.truncation))?;
    println!("total mass {:.12}", m.total_mass());
    for a in m.atoms() {
        println!("  atom {:+.10} weight {:.6e}", a.lambda, a.weight);
    }
    Ok(())
}
