//! Interval arithmetic, certified root isolation and refinement, and
//! eigenvalue enclosures with guaranteed error bounds.

mod hexfloat;
mod interval;
mod refine;
mod spectrum;

pub use hexfloat::{format_hex, parse_hex};
pub use interval::{eval_poly, eval_poly_centered, rational_sign, Interval};
pub use refine::{
    eval_exact, isolate_roots, isolate_roots_exact, isolate_roots_subdivision,
    isolate_roots_subdivision_exact, joukowski_exact, refine_root, refine_root_exact, RationalBox,
    STURM_MAX_DEGREE,
};
pub(crate) use refine::refine_interval;
pub use spectrum::{
    exact_symbol, spectrum_compact, symbol_roots_exact, validated_spectrum, CompactSpectrum,
    EigenEnclosure, EnclosureRecord,
};
