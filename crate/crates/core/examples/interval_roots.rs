//! Sturm counting, isolation and interval Newton refinement on a polynomial
//! with closely spaced roots.

use jacobi_spectra::polynomials::{sturm_count, Poly};
use jacobi_spectra::validated::{isolate_roots, refine_root, Interval};

fn main() -> jacobi_spectra::Result<()> {
    // (x − 0.1)(x − 0.1001)(x + 0.5)
    let p = &(&Poly::new(vec![-0.1, 1.0]) * &Poly::new(vec![-0.1001, 1.0])) * &Poly::new(vec![0.5, 1.0]);
    println!("roots in (−1, 1): {}", sturm_count(&p, -1.0, 1.0)?);
    for b in isolate_roots(&p, -1.0, 1.0)? {
        let r = refine_root(&p, b, 1e-12)?;
        println!("  [{:e}, {:e}] -> [{:.17}, {:.17}]", b.lo(), b.hi(), r.lo(), r.hi());
    }
    let x = Interval::new(0.0999, 0.1002)?;
    println!("p over {x:?} = {:?}", jacobi_spectra::validated::eval_poly(&p, x));
    Ok(())
}
