//! `p_C`, the principal resolvent and the spectral measure.

mod measure;
mod resolvent;
mod symbols;

pub use measure::{
    spectral_measure, symbol_roots, Atom, SpectralMeasure, EDGE_MARGIN, MASS_TOLERANCE,
    ORACLE_MIN_DISTANCE, WEIGHT_CHECK_TOLERANCE,
};
pub use resolvent::{
    disc_resolvent, joukowski, joukowski_inverse, resolvent, resolvent_continued_fraction,
    resolvent_free, Resolvent,
};
pub use symbols::{
    p_c, p_c_cheb, p_c_mu, p_c_mu_cheb, symbol_polynomials_in, DUAL_TOLERANCE, MAX_FLOAT_SIZE,
};
