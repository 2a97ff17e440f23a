//! Eigenvalue enclosures with certified error bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::hexfloat::format_hex;
use super::interval::Interval;
use super::refine::{
    isolate_roots_exact, isolate_roots_subdivision_exact, joukowski_exact, refine_root_exact,
    RationalBox, STURM_MAX_DEGREE,
};
use crate::connection::{structured_from_coefficients, Coefficients};
use crate::error::{Error, Result};
use crate::operators::{choose_truncation, truncate, JacobiOperator};
use crate::polynomials::Poly;
use crate::scalar::Scalar;

/// A certified eigenvalue.
///
/// `z_box` holds exactly one root of the symbol `c` (in normalised
/// coordinates) and `lambda_box` holds the corresponding eigenvalue in the
/// operator's own coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenEnclosure {
    pub z_box: Interval,
    pub lambda_box: Interval,
    pub certified_radius: f64,
    z_exact: RationalBox,
}

impl EigenEnclosure {
    /// Float nearest the centre of `lambda_box`.
    pub fn midpoint(&self) -> f64 {
        self.lambda_box.mid()
    }

    /// Rational bracket of the root of `c` behind this enclosure.
    pub fn z_exact(&self) -> &RationalBox {
        &self.z_exact
    }

    pub fn contains(&self, lambda: f64) -> bool {
        self.lambda_box.contains(lambda)
    }

    /// Machine-readable record; bounds as hex floats.
    pub fn record(&self) -> EnclosureRecord {
        EnclosureRecord {
            midpoint: self.midpoint(),
            radius: self.certified_radius,
            lo: format_hex(self.lambda_box.lo()),
            hi: format_hex(self.lambda_box.hi()),
            z_lo: format_hex(self.z_box.lo()),
            z_hi: format_hex(self.z_box.hi()),
        }
    }
}

/// Serialised form of an [`EigenEnclosure`].
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct EnclosureRecord {
    pub midpoint: f64,
    pub radius: f64,
    pub lo: String,
    pub hi: String,
    pub z_lo: String,
    pub z_hi: String,
}

fn q(x: f64) -> BigRational {
    BigRational::from_f64_exact(x)
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Divide out roots of `c` at `±1`; a second root at the same point is
/// impossible for a genuine symbol and is reported.
fn deflate_unit_roots(c: Poly<BigRational>) -> Result<Poly<BigRational>> {
    let mut c = c;
    for at in [1, -1] {
        let x = int(at);
        if c.eval(&x).is_zero() {
            c = c.deflate(&x, 0.0)?;
            if c.eval(&x).is_zero() {
                return Err(Error::InvalidOperator(format!(
                    "symbol has a multiple root at {at}"
                )));
            }
        }
    }
    Ok(c)
}

/// The symbol `c` of `J` in exact arithmetic, after exact normalisation.
pub fn exact_symbol(op: &JacobiOperator) -> Result<Poly<BigRational>> {
    let coeffs = Coefficients::<BigRational>::normalized(op);
    Ok(structured_from_coefficients(&coeffs)?.symbol())
}

/// Roots of the symbol in `(−1, 1)` as rational brackets, `±1` deflated.
///
/// Exact Sturm bisection up to degree [`STURM_MAX_DEGREE`], certified
/// subdivision beyond.
///
/// Zero is never a root (`c(0) = t_0 > 0`) and is used as a split point, so
/// every bracket lies on one side of it.
pub fn symbol_roots_exact(c: &Poly<BigRational>) -> Result<Vec<RationalBox>> {
    let c = deflate_unit_roots(c.clone())?;
    if c.degree().unwrap_or(0) > STURM_MAX_DEGREE {
        let mut out = isolate_roots_subdivision_exact(&c, -1.0, 0.0)?;
        out.extend(isolate_roots_subdivision_exact(&c, 0.0, 1.0)?);
        return Ok(out);
    }
    let mut out = isolate_roots_exact(&c, &int(-1), &BigRational::zero())?;
    out.extend(isolate_roots_exact(&c, &BigRational::zero(), &int(1))?);
    Ok(out)
}

/// Certified enclosures of every eigenvalue of a Toeplitz-plus-finite-rank
/// operator outside its essential spectrum, each of radius at most `ε`.
///
/// The symbol is built in exact rational arithmetic; its roots in `(−1, 1)`
/// are isolated by Sturm sequences and refined to the `z`-tolerance
/// `(ε/2)/((1+B)(2+B))`, `B` bounding `‖J − Δ‖` after normalisation. Each
/// `λ`-box is then formed from exact Joukowski images of the rational
/// endpoints and rounded outward once; the tolerance is tightened further
/// if needed so the exact `λ`-width stays within `ε/2`.
pub fn validated_spectrum(op: &JacobiOperator, epsilon: f64) -> Result<Vec<EigenEnclosure>> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    let coeffs = Coefficients::<BigRational>::normalized(op);
    let c = structured_from_coefficients(&coeffs)?.symbol();
    let brackets = symbol_roots_exact(&c)?;
    let c = deflate_unit_roots(c)?;

    let tau = q(op.tail_diag());
    let two_b = q(op.tail_off()) * int(2);
    let to_user = |lambda: BigRational| &tau + &two_b * lambda;

    let bound = q(coeffs.perturbation_norm_bound());
    let eps_norm = q(epsilon) / &two_b;
    let base_tol = &eps_norm / (int(4) * (BigRational::one() + &bound) * (int(2) + &bound));
    let target = &eps_norm / int(2);

    let mut out = Vec::with_capacity(brackets.len());
    for bracket in brackets {
        let mut tol = base_tol.clone();
        let mut rounds = 0;
        let refined = loop {
            let r = refine_root_exact(&c, &bracket, &tol)?;
            let width = joukowski_exact(&r.lo) - joukowski_exact(&r.hi);
            if width <= target {
                break r;
            }
            rounds += 1;
            if rounds > 64 {
                return Err(Error::NonConvergence {
                    iterations: rounds,
                    width: width.to_f64(),
                    tolerance: target.to_f64(),
                });
            }
            tol /= int(4);
        };
        // λ(z) decreases on each side of 0, and so does τ + 2b∞λ
        let lam_lo = to_user(joukowski_exact(&refined.hi));
        let lam_hi = to_user(joukowski_exact(&refined.lo));
        let lambda_box = Interval::hull_of_rationals(&lam_lo, &lam_hi);
        let certified_radius = lambda_box.radius();
        if certified_radius > epsilon {
            return Err(Error::BelowFloatResolution {
                radius: certified_radius,
                epsilon,
            });
        }
        out.push(EigenEnclosure {
            z_box: refined.to_interval(),
            lambda_box,
            certified_radius,
            z_exact: refined,
        });
    }
    out.sort_by(|a, b| a.lambda_box.lo().total_cmp(&b.lambda_box.lo()));
    Ok(out)
}

/// Spectrum of a compact perturbation of Δ to Hausdorff accuracy `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactSpectrum {
    /// Rows kept by the truncation.
    pub truncation: usize,
    /// The essential spectrum `[−1, 1]`.
    pub essential: Interval,
    pub enclosures: Vec<EigenEnclosure>,
}

/// `[−1, 1] ∪ validated_spectrum(J^{[m]}, ε/2)` with `m` chosen so that the
/// discarded tail is below `ε/6`.
pub fn spectrum_compact<F>(op: &JacobiOperator, tail_bound: F, epsilon: f64) -> Result<CompactSpectrum>
where
    F: Fn(usize) -> f64,
{
    if !op.is_normalized() {
        return Err(Error::InvalidOperator(
            "compact perturbations are handled in normalised coordinates".into(),
        ));
    }
    let m = choose_truncation(tail_bound, epsilon)?;
    let enclosures = validated_spectrum(&truncate(op, m), epsilon / 2.0)?;
    Ok(CompactSpectrum {
        truncation: m,
        essential: Interval::new(-1.0, 1.0)?,
        enclosures,
    })
}
