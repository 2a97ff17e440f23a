#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jacobi_spectra::JacobiOperator;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalised operator with `1 ≤ n ≤ max_n`, diagonal in `[−1, 1]` and
/// off-diagonal in `(0.05, 1]`.
pub fn random_operator(rng: &mut ChaCha8Rng, max_n: usize) -> JacobiOperator {
    let n = rng.random_range(1..=max_n);
    let diag = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let off = (0..n.saturating_sub(1))
        .map(|_| rng.random_range(0.05..=1.0))
        .collect();
    JacobiOperator::perturbed_free(diag, off).expect("valid entries")
}

/// Same entries shifted and scaled to a random Toeplitz tail.
pub fn random_raw_operator(rng: &mut ChaCha8Rng, max_n: usize) -> JacobiOperator {
    let base = random_operator(rng, max_n);
    let a = rng.random_range(-2.0..=2.0);
    let b = rng.random_range(0.2..=2.0);
    let diag = base.pert_diag().iter().map(|x| a + 2.0 * b * x).collect();
    let off = base.pert_off().iter().map(|x| 2.0 * b * x).collect();
    JacobiOperator::new(a, b, diag, off).expect("valid entries")
}

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// The rational example operator.
pub fn explicit_example() -> JacobiOperator {
    JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75]).unwrap()
}

/// Orthonormal Legendre polynomials `√(k+½)·L_k(s)` by Bonnet's recurrence,
/// scaled so that they are orthonormal for `ds/2`.
pub fn legendre_orthonormal(count: usize, s: f64) -> Vec<f64> {
    let mut l = vec![0.0; count];
    if count > 0 {
        l[0] = 1.0;
    }
    if count > 1 {
        l[1] = s;
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        l[k + 1] = ((2.0 * kf + 1.0) * s * l[k] - kf * l[k - 1]) / (kf + 1.0);
    }
    l.iter()
        .enumerate()
        .map(|(k, v)| v * (2.0 * k as f64 + 1.0).sqrt())
        .collect()
}
