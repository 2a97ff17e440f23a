//! Writes phase-portrait samples `re,im,abs,arg` of G(λ) and of −c_μ(z)/c(z)
//! for the rational example operator.
//!
//! Usage: `cargo run --example phase_portrait [OUT_DIR]`

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;
use jacobi_spectra::spectral::Resolvent;
use jacobi_spectra::JacobiOperator;

const N: usize = 201;

fn grid(r: &Resolvent, lo: f64, hi: f64, disc: bool) -> String {
    let mut out = String::from("re,im,abs,arg\n");
    let step = (hi - lo) / (N - 1) as f64;
    for j in 0..N {
        for i in 0..N {
            let p = Complex64::new(lo + i as f64 * step, lo + j as f64 * step);
            let v = if disc { r.eval_disc(p) } else { r.eval(p) };
            // skip the cut and the poles
            if let Ok(v) = v {
                writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p.re, p.im, v.norm(), v.arg()).unwrap();
            }
        }
    }
    out
}

fn main() -> jacobi_spectra::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let op = JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75])?;
    let r = Resolvent::new(&op)?;
    for (name, lo, hi, disc) in [("lambda_plane.csv", -2.0, 2.0, false), ("z_plane.csv", -1.5, 1.5, true)] {
        let path = dir.join(name);
        fs::write(&path, grid(&r, lo, hi, disc)).expect("writable output directory");
        println!("wrote {}", path.display());
    }
    Ok(())
}
