//! Certified real-root isolation and refinement.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::One;

use super::interval::{eval_poly, eval_poly_centered, rational_sign, Interval};
use crate::error::{Error, Result};
use crate::polynomials::{Poly, SturmSequence};
use crate::scalar::Scalar;

const REFINE_ITERATIONS: usize = 400;

/// A root bracket with rational endpoints. `lo == hi` marks an exact root.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalBox {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalBox {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn to_interval(&self) -> Interval {
        Interval::hull_of_rationals(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

fn fraction(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Split points tried in turn; the first that is not a root is used.
const SPLITS: [(i64, i64); 6] = [(1, 2), (3, 8), (5, 8), (7, 16), (9, 16), (13, 32)];

/// Isolating boxes for every distinct real root of `p` in `(lo, hi)`,
/// by bisection driven by exact Sturm counts.
pub fn isolate_roots_exact(
    p: &Poly<BigRational>,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<Vec<RationalBox>> {
    let seq = SturmSequence::new(p);
    let total = seq.count(lo, hi)?;
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(RationalBox { lo: a, hi: b }),
            _ => {
                let width = &b - &a;
                let mut split = None;
                for &(num, den) in &SPLITS {
                    let m = &a + &width * fraction(num, den);
                    if seq.sign(&m) != Sign::NoSign {
                        split = Some(m);
                        break;
                    }
                }
                let Some(m) = split else {
                    return Err(Error::IsolationUndecided {
                        lo: a.to_f64(),
                        hi: b.to_f64(),
                    });
                };
                let left = seq.count(&a, &m)?;
                stack.push((m.clone(), b, count - left));
                stack.push((a, m, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Degree above which exact Sturm sequences are replaced by subdivision;
/// their coefficients grow too fast beyond it.
pub const STURM_MAX_DEGREE: usize = 12;

fn horner(coeffs: &[Interval], x: Interval) -> Interval {
    coeffs
        .iter()
        .rev()
        .fold(Interval::point(0.0), |acc, &c| acc * x + c)
}

/// Isolating boxes for the real roots of `p` in `(lo, hi)` by subdivision.
///
/// Exclusion and monotonicity are decided on outward-rounded enclosures of
/// the exact coefficients; the sign change across each returned box is
/// checked in exact arithmetic. Only simple roots can be isolated.
pub fn isolate_roots_subdivision_exact(
    p: &Poly<BigRational>,
    lo: f64,
    hi: f64,
) -> Result<Vec<RationalBox>> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("bad interval ({lo}, {hi})")));
    }
    let coeffs: Vec<Interval> = p.coeffs().iter().map(Interval::from_rational).collect();
    let dcoeffs: Vec<Interval> = p
        .derivative()
        .coeffs()
        .iter()
        .map(Interval::from_rational)
        .collect();
    let sign_at = |x: f64| rational_sign(&p.eval(&BigRational::from_f64_exact(x)));
    for x in [lo, hi] {
        if sign_at(x) == 0 {
            return Err(Error::EndpointRoot { at: x });
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let x = Interval::new(a, b)?;
        let m = Interval::point(x.mid());
        let slope = horner(&dcoeffs, x);
        let centered = horner(&coeffs, m) + slope * (x - m);
        if !centered.contains_zero() || !horner(&coeffs, x).contains_zero() {
            continue;
        }
        if !slope.contains_zero() {
            if sign_at(a) != sign_at(b) {
                out.push(RationalBox {
                    lo: BigRational::from_f64_exact(a),
                    hi: BigRational::from_f64_exact(b),
                });
            }
            continue;
        }
        let w = b - a;
        let split = [0.5, 0.45, 0.55, 0.4, 0.6]
            .iter()
            .map(|t| a + t * w)
            .find(|&m| m > a && m < b && sign_at(m) != 0);
        match split {
            Some(m) if w > 4.0 * f64::EPSILON * a.abs().max(b.abs()) => {
                stack.push((m, b));
                stack.push((a, m));
            }
            _ => return Err(Error::IsolationUndecided { lo: a, hi: b }),
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Isolating intervals for the real roots of `p` in `(lo, hi)`.
///
/// Counts are exact: the float coefficients are read as the rationals they
/// are. Requires `p(lo) ≠ 0` and `p(hi) ≠ 0`.
pub fn isolate_roots(p: &Poly<f64>, lo: f64, hi: f64) -> Result<Vec<Interval>> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("bad interval ({lo}, {hi})")));
    }
    let boxes = isolate_roots_exact(
        &p.to_rational(),
        &BigRational::from_f64_exact(lo),
        &BigRational::from_f64_exact(hi),
    )?;
    Ok(boxes.iter().map(RationalBox::to_interval).collect())
}

/// Shrink an isolating box to width `≤ tol` (exact arithmetic throughout).
///
/// Float Newton steps propose sub-brackets which are accepted only after an
/// exact sign check; otherwise the box is bisected. Roots of even
/// multiplicity fall back to Sturm-count bisection.
pub fn refine_root_exact(
    p: &Poly<BigRational>,
    bracket: &RationalBox,
    tol: &BigRational,
) -> Result<RationalBox> {
    let pf = p.to_f64();
    let mut b = bracket.clone();
    if b.is_point() {
        return Ok(b);
    }
    let mut s_lo = poly_sign(p, &b.lo);
    let s_hi = poly_sign(p, &b.hi);
    if s_lo == Sign::NoSign {
        return Ok(RationalBox {
            lo: b.lo.clone(),
            hi: b.lo,
        });
    }
    if s_hi == Sign::NoSign {
        return Ok(RationalBox {
            lo: b.hi.clone(),
            hi: b.hi,
        });
    }
    let by_sign = s_lo != s_hi;
    let seq = (!by_sign).then(|| SturmSequence::new(p));
    let mut iterations = 0;
    while b.width() > *tol {
        iterations += 1;
        if iterations > 4 * REFINE_ITERATIONS {
            return Err(Error::NonConvergence {
                iterations,
                width: b.width().to_f64(),
                tolerance: tol.to_f64(),
            });
        }
        let mid = b.mid();
        if by_sign {
            if let Some(next) = newton_bracket(p, &pf, &b, s_lo, tol) {
                b = next;
                continue;
            }
            match poly_sign(p, &mid) {
                Sign::NoSign => {
                    return Ok(RationalBox {
                        lo: mid.clone(),
                        hi: mid,
                    })
                }
                s if s == s_lo => {
                    b.lo = mid;
                    s_lo = s;
                }
                _ => b.hi = mid,
            }
        } else {
            let seq = seq.as_ref().expect("built when signs agree");
            if seq.sign(&mid) == Sign::NoSign {
                return Ok(RationalBox {
                    lo: mid.clone(),
                    hi: mid,
                });
            }
            if seq.count(&b.lo, &mid)? == 1 {
                b.hi = mid;
            } else {
                b.lo = mid;
            }
        }
    }
    Ok(b)
}

fn poly_sign(p: &Poly<BigRational>, x: &BigRational) -> Sign {
    match rational_sign(&p.eval(x)) {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => Sign::NoSign,
    }
}

/// Float Newton step from the box midpoint, turned into a candidate bracket
/// and verified exactly.
fn newton_bracket(
    p: &Poly<BigRational>,
    pf: &Poly<f64>,
    b: &RationalBox,
    s_lo: Sign,
    tol: &BigRational,
) -> Option<RationalBox> {
    let lo = b.lo.to_f64();
    let hi = b.hi.to_f64();
    let scale = lo.abs().max(hi.abs()).max(1e-300);
    // below this width float steps carry no information
    if hi - lo < 1e-13 * scale {
        return None;
    }
    let x = b.mid().to_f64();
    let (v, dv) = pf.eval_with_derivative(x);
    if dv == 0.0 || !v.is_finite() || !dv.is_finite() {
        return None;
    }
    let guess = x - v / dv;
    if !(guess > lo && guess < hi) {
        return None;
    }
    let step = (v / dv).abs();
    let h = (2.0 * step).max(1e-14 * scale).max(tol.to_f64() / 4.0);
    let g = BigRational::from_f64_exact(guess);
    let hq = BigRational::from_f64_exact(h);
    let a = &g - &hq;
    let c = &g + &hq;
    if a <= b.lo || c >= b.hi {
        return None;
    }
    let sa = poly_sign(p, &a);
    let sc = poly_sign(p, &c);
    if sa == Sign::NoSign {
        return Some(RationalBox { lo: a.clone(), hi: a });
    }
    if sc == Sign::NoSign {
        return Some(RationalBox { lo: c.clone(), hi: c });
    }
    (sa == s_lo && sc != s_lo).then_some(RationalBox { lo: a, hi: c })
}

/// Outcome of float interval refinement.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Refined {
    pub enclosure: Interval,
    pub converged: bool,
    pub iterations: usize,
}

/// Interval Newton with bisection fallback on a float polynomial.
pub(crate) fn refine_interval(p: &Poly<f64>, start: Interval, tol: f64) -> Result<Refined> {
    let dp = p.derivative();
    let sign_at = |x: f64| eval_poly(p, Interval::point(x)).sign();
    let mut x = start;
    let (s_lo, s_hi) = (sign_at(x.lo()), sign_at(x.hi()));
    if s_lo == Some(0) {
        return Ok(done(Interval::point(x.lo()), 0));
    }
    if s_hi == Some(0) {
        return Ok(done(Interval::point(x.hi()), 0));
    }
    if s_lo.is_none() || s_hi.is_none() || s_lo == s_hi {
        return Err(Error::IsolationUndecided {
            lo: x.lo(),
            hi: x.hi(),
        });
    }
    let s_lo = s_lo.expect("checked");
    for it in 0..REFINE_ITERATIONS {
        if x.width() <= tol {
            return Ok(done(x, it));
        }
        let m = x.mid();
        let fm = eval_poly(p, Interval::point(m));
        let slope = eval_poly(&dp, x);
        let mut progressed = false;
        if !slope.contains_zero() {
            let step = fm.div(&slope)?;
            let newton = Interval::point(m) - step;
            match x.intersect(&newton) {
                Some(next) => {
                    progressed = next != x;
                    x = next;
                }
                None => {
                    return Err(Error::IsolationUndecided {
                        lo: x.lo(),
                        hi: x.hi(),
                    })
                }
            }
        }
        if progressed {
            continue;
        }
        match fm.sign() {
            Some(0) => return Ok(done(Interval::point(m), it)),
            Some(s) if m > x.lo() && m < x.hi() => {
                x = if s == s_lo {
                    Interval::new(m, x.hi())?
                } else {
                    Interval::new(x.lo(), m)?
                };
            }
            _ => {
                return Ok(Refined {
                    enclosure: x,
                    converged: false,
                    iterations: it,
                })
            }
        }
    }
    Ok(Refined {
        enclosure: x,
        converged: x.width() <= tol,
        iterations: REFINE_ITERATIONS,
    })
}

fn done(enclosure: Interval, iterations: usize) -> Refined {
    Refined {
        enclosure,
        converged: true,
        iterations,
    }
}

/// Shrink a box isolating one simple root of `p` to width `≤ tol`.
///
/// Each step is either an interval Newton contraction or a bisection with
/// certified signs, so the returned interval always contains the root.
pub fn refine_root(p: &Poly<f64>, bracket: Interval, tol: f64) -> Result<Interval> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let r = refine_interval(p, bracket, tol)?;
    if r.converged {
        Ok(r.enclosure)
    } else {
        Err(Error::NonConvergence {
            iterations: r.iterations,
            width: r.enclosure.width(),
            tolerance: tol,
        })
    }
}

/// Root isolation by interval subdivision, for degrees where exact Sturm
/// sequences get expensive.
///
/// Boxes where the mean-value enclosure excludes zero are discarded; boxes
/// where `p′` keeps one sign hold at most one root, decided by certified
/// endpoint signs. Everything else is split.
pub fn isolate_roots_subdivision(p: &Poly<f64>, lo: f64, hi: f64) -> Result<Vec<Interval>> {
    let dp = p.derivative();
    let sign_at = |x: f64| eval_poly(p, Interval::point(x)).sign();
    for x in [lo, hi] {
        if sign_at(x) != Some(1) && sign_at(x) != Some(-1) {
            return Err(Error::EndpointRoot { at: x });
        }
    }
    let min_width = 1e-12 * lo.abs().max(hi.abs()).max(1.0);
    let mut out = Vec::new();
    let mut stack = vec![Interval::new(lo, hi)?];
    while let Some(x) = stack.pop() {
        if !eval_poly_centered(p, &dp, x).contains_zero() {
            continue;
        }
        if !eval_poly(&dp, x).contains_zero() {
            let (a, b) = (sign_at(x.lo()), sign_at(x.hi()));
            if a.is_some() && b.is_some() {
                if a != b {
                    out.push(x);
                }
                continue;
            }
        }
        if x.width() < min_width {
            return Err(Error::IsolationUndecided {
                lo: x.lo(),
                hi: x.hi(),
            });
        }
        // split away from points where the sign is undecided
        let w = x.hi() - x.lo();
        let split = [0.5, 0.45, 0.55, 0.4, 0.6]
            .iter()
            .map(|t| x.lo() + t * w)
            .find(|&m| m > x.lo() && m < x.hi() && matches!(sign_at(m), Some(1) | Some(-1)));
        let Some(m) = split else {
            return Err(Error::IsolationUndecided {
                lo: x.lo(),
                hi: x.hi(),
            });
        };
        stack.push(Interval::new(m, x.hi())?);
        stack.push(Interval::new(x.lo(), m)?);
    }
    out.sort_by(|a, b| a.lo().total_cmp(&b.lo()));
    Ok(out)
}

/// Exact value of `p` at `x`.
pub fn eval_exact(p: &Poly<BigRational>, x: &BigRational) -> BigRational {
    p.eval(x)
}

/// `½(z + 1/z)` in exact arithmetic.
pub fn joukowski_exact(z: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (z + z.recip()) * half
}
