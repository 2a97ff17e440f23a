use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial vanishes at interval endpoint {at}")]
    EndpointRoot { at: f64 },

    #[error("deflation at {at} is not at a root (residual {residual:e})")]
    DeflationAtNonRoot { at: f64, residual: f64 },

    #[error("connection matrix structure violated: max deviation {max_violation:e} exceeds {tolerance:e}")]
    StructureViolation { max_violation: f64, tolerance: f64 },

    #[error("{what}: the two formulas disagree by {discrepancy:e}")]
    DualFormulaMismatch { what: &'static str, discrepancy: f64 },

    #[error("evaluation on the branch cut [-1, 1] at {at}")]
    CutEvaluation { at: Complex64 },

    #[error("pole at {at}")]
    Pole { at: Complex64 },

    #[error("zero pivot at continued-fraction level {level}; increase the depth")]
    ZeroPivot { level: usize },

    #[error("root refinement did not reach width {tolerance:e} after {iterations} iterations (width {width:e})")]
    NonConvergence {
        iterations: usize,
        width: f64,
        tolerance: f64,
    },

    #[error("an enclosure of radius {radius:e} is the tightest double-precision box; {epsilon:e} was requested")]
    BelowFloatResolution { radius: f64, epsilon: f64 },

    #[error("interval division by an interval containing zero")]
    IntervalDivisionByZero,

    #[error("square root of an interval with negative part")]
    NegativeSqrt,

    #[error("tail bound did not fall below {target:e} within {cap} rows")]
    IterationCap { target: f64, cap: usize },

    #[error("root isolation undecided near [{lo}, {hi}]")]
    IsolationUndecided { lo: f64, hi: f64 },

    #[error("density requested at {at}, outside the open essential spectrum")]
    OutsideSupport { at: f64 },

    #[error("invalid spectral measure: {0}")]
    InvalidMeasure(String),
}

impl Error {
    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidOperator(_) | Error::InvalidArgument(_) | Error::Parse(_) => 2,
            Error::EndpointRoot { .. }
            | Error::DeflationAtNonRoot { .. }
            | Error::CutEvaluation { .. }
            | Error::Pole { .. }
            | Error::ZeroPivot { .. }
            | Error::IntervalDivisionByZero
            | Error::NegativeSqrt
            | Error::IterationCap { .. }
            | Error::OutsideSupport { .. } => 3,
            Error::StructureViolation { .. }
            | Error::DualFormulaMismatch { .. }
            | Error::NonConvergence { .. }
            | Error::BelowFloatResolution { .. }
            | Error::IsolationUndecided { .. }
            | Error::InvalidMeasure(_) => 4,
        }
    }
}
