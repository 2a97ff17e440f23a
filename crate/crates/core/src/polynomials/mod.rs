//! Polynomial representations, recurrences and Sturm sequences.

mod poly;
mod recurrence;
mod sturm;

pub use poly::{cheb_to_joukowski, mu_derivative_cheb, ChebSeries, LaurentPoly, Poly};
pub use recurrence::{
    entries, eval_first_associated, eval_orthonormal, first_associated_cheb, orthonormal_cheb,
    orthonormal_values,
};
pub use sturm::{sturm_count, sturm_count_exact, SturmSequence};
