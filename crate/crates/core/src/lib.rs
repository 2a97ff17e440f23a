//! Spectra, spectral measures and resolvents of Jacobi operators that are
//! finite-rank (or, after truncation, compact) perturbations of the free
//! Jacobi operator Δ, computed through connection coefficient matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`operators`]: Toeplitz-plus-finite-rank operators, normalisation,
//!   truncation and the named families.
//! * [`polynomials`]: monomial, Laurent and Chebyshev-U representations,
//!   three-term recurrences and Sturm sequences.
//! * [`connection`]: connection coefficient matrices and their Toeplitz
//!   symbols `c` and `c_μ`.
//! * [`spectral`]: `p_C`, resolvents and the spectral measure.
//! * [`validated`]: interval arithmetic and certified eigenvalue enclosures.
//! * [`cli`]: the command-line frontend behind the `jacobi-spectra` binary.

pub mod cli;
pub mod connection;
pub mod error;
pub mod operators;
pub mod polynomials;
pub mod scalar;
pub mod spectral;
pub mod validated;

pub use error::{Error, Result};
pub use operators::{AffineMap, JacobiOperator};
