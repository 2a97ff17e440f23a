//! The spectral measure: a density on the essential spectrum plus atoms.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::resolvent::{joukowski, joukowski_inverse, Resolvent};
use crate::error::{Error, Result};
use crate::operators::{normalize_to_free, AffineMap, JacobiOperator};
use crate::polynomials::{sturm_count, ChebSeries, Poly};
use crate::validated::{
    isolate_roots_exact, isolate_roots_subdivision, refine_interval, Interval, STURM_MAX_DEGREE,
};

/// Relative size of `c(±1)` below which `±1` counts as a root.
const UNIT_ROOT_TOLERANCE: f64 = 1e-12;

/// Gauss–Legendre points per quadrature panel.
const PANEL_POINTS: usize = 20;
/// Uniform panels on `[0, π]` before refinement.
const INITIAL_PANELS: usize = 8;
const PANEL_TOLERANCE: f64 = 1e-14;
const MIN_PANEL_WIDTH: f64 = 1e-13;
/// Relative panel agreement treated as converged regardless of the tolerance.
const ROUNDING_FLOOR: f64 = 1e-12;
const MAX_SPLITS: usize = 20_000;
/// Nodes at which positivity of `p_C` is checked.
const POSITIVITY_NODES: usize = 8192;

/// Relative mismatch between the weight formula and the numeric limit above
/// which a diagnostic is recorded.
pub const WEIGHT_CHECK_TOLERANCE: f64 = 1e-6;

/// Tolerance on the total mass used by [`SpectralMeasure::check_invariants`].
pub const MASS_TOLERANCE: f64 = 1e-8;

/// Closest distance to the support at which the Stieltjes oracle answers.
pub const ORACLE_MIN_DISTANCE: f64 = 1e-6;

/// Densities are refused this close to the ends of `[−1, 1]`.
pub const EDGE_MARGIN: f64 = 1e-12;

/// A point mass of the spectral measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    /// Root of the symbol in `(−1, 1)`, normalised coordinates.
    pub z: f64,
    /// The eigenvalue in the operator's coordinates.
    pub lambda: f64,
    pub weight: f64,
    /// `lim ε·Im G(λ + iε)` estimated by Richardson extrapolation.
    pub limit_weight: f64,
}

/// `μ = ρ ds + Σ w_k δ_{λ_k}` for a Toeplitz-plus-finite-rank operator.
///
/// The density is stored in normalised coordinates as `(2/π)√(1−s²)/p_C(s)`;
/// all public queries take and return the operator's own coordinates.
#[derive(Debug, Clone)]
pub struct SpectralMeasure {
    n: usize,
    c: Poly<f64>,
    pc: Poly<f64>,
    pc_cheb: ChebSeries<f64>,
    pc_mu_cheb: ChebSeries<f64>,
    atoms: Vec<Atom>,
    back_map: AffineMap,
    /// Angles in `[0, π]` near which the density may be sharply peaked.
    breaks: Vec<f64>,
    diagnostics: Vec<String>,
}

fn terms_size(p: &Poly<f64>, r: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

fn deflate_unit_roots_float(c: &Poly<f64>) -> Result<Poly<f64>> {
    let mut c = c.clone();
    for at in [1.0, -1.0] {
        let tol = UNIT_ROOT_TOLERANCE * terms_size(&c, 1.0);
        if c.eval(&at).abs() <= tol {
            c = c.deflate(&at, tol)?;
            if c.eval(&at).abs() <= UNIT_ROOT_TOLERANCE * terms_size(&c, 1.0) {
                return Err(Error::InvalidOperator(format!(
                    "symbol has a multiple root at {at}"
                )));
            }
        }
    }
    Ok(c)
}

/// Roots of a float symbol in `(−1, 0) ∪ (0, 1)`, `±1` deflated first.
pub fn symbol_roots(c: &Poly<f64>) -> Result<Vec<f64>> {
    let c = deflate_unit_roots_float(c)?;
    let degree = c.degree().unwrap_or(0);
    let boxes: Vec<Interval> = if degree <= STURM_MAX_DEGREE {
        let exact = c.to_rational();
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut out = isolate_roots_exact(&exact, &-one.clone(), &zero)?;
        out.extend(isolate_roots_exact(&exact, &zero, &one)?);
        out.iter().map(|b| b.to_interval()).collect()
    } else {
        let mut out = isolate_roots_subdivision(&c, -1.0, 0.0)?;
        out.extend(isolate_roots_subdivision(&c, 0.0, 1.0)?);
        out
    };
    let mut roots = Vec::with_capacity(boxes.len());
    for b in boxes {
        let tol = 4.0 * f64::EPSILON * b.mag().max(f64::MIN_POSITIVE);
        roots.push(refine_interval(&c, b, tol)?.enclosure.mid());
    }
    Ok(roots)
}

/// `(z − 1/z)² / (z c′(z) c(1/z))`, with `c(1/z)` taken from
/// `c(1/z)c_μ(z) − c(z)c_μ(1/z) = 2(z − 1/z)` at the root:
/// `c(1/z) = 2(z − 1/z)/c_μ(z)`. Evaluating `c` outside the disc directly
/// loses everything to cancellation once the degree is large.
fn atom_weight(c: &Poly<f64>, cmu: &Poly<f64>, z: f64) -> f64 {
    let dc = c.derivative().eval(&z);
    let reflected = 2.0 * (z - z.recip()) / cmu.eval(&z);
    (z - z.recip()).powi(2) / (z * dc * reflected)
}

/// `ε·Im G(λ + iε)` at two values of `ε`, extrapolated to `ε → 0`.
/// `lim ε·Im G(λ + iε)` for a normalised operator, with `G` in its disc
/// form. The error is `O(ε²)`; `ε` is scaled to `gap`, the distance from
/// `λ` to the nearest other singularity, and one extrapolation step is taken.
fn limit_weight(resolvent: &Resolvent, lambda: f64, gap: f64) -> Result<f64> {
    let e1 = 1e-3 * gap;
    let e2 = 0.1 * e1;
    let w = |e: f64| -> Result<f64> {
        let z = joukowski_inverse(Complex64::new(lambda, e))?;
        Ok(e * resolvent.eval_disc(z)?.im)
    };
    let (w1, w2) = (w(e1)?, w(e2)?);
    Ok((100.0 * w2 - w1) / 99.0)
}

/// Panel breakpoints on `[0, π]` graded towards the arguments of the
/// roots of `c` that lie close to the unit circle.
fn peak_breaks(c: &Poly<f64>) -> Vec<f64> {
    let mut breaks: Vec<f64> = (0..=INITIAL_PANELS)
        .map(|k| PI * k as f64 / INITIAL_PANELS as f64)
        .collect();
    let coeffs = c.coeffs();
    let Some(deg) = c.degree().filter(|&d| d > 0) else {
        return breaks;
    };
    let lead = coeffs[deg];
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let Some(schur) = Schur::try_new(companion, f64::EPSILON, 10_000) else {
        return breaks;
    };
    for r in schur.complex_eigenvalues().iter() {
        let (rho, phi) = (r.norm(), r.arg().abs());
        let d = rho.ln().abs();
        if !(d < 0.5) {
            continue;
        }
        breaks.push(phi);
        let mut step = d.max(MIN_PANEL_WIDTH);
        while step < 0.5 {
            breaks.extend([phi - step, phi + step]);
            step *= 2.0;
        }
    }
    breaks.retain(|t| (0.0..=PI).contains(t));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < MIN_PANEL_WIDTH);
    breaks
}

fn chebyshev_nodes(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |j| ((2 * j + 1) as f64 * PI / (2 * count) as f64).cos())
}

/// The spectral measure of `J`.
///
/// Atoms come from the roots of the symbol `c` in `(−1, 1)`; their weights
/// from `(z − 1/z)²/(z c′(z) c(1/z))`, each cross-checked against the
/// numerical limit of `ε·Im G(λ + iε)`.
pub fn spectral_measure(op: &JacobiOperator) -> Result<SpectralMeasure> {
    let (norm, back_map) = normalize_to_free(op);
    let resolvent = Resolvent::new(&norm)?;
    let c = resolvent.symbol().clone();
    let mut atoms = Vec::new();
    let mut diagnostics = Vec::new();
    let roots = symbol_roots(&c)?;
    let eigenvalues: Vec<f64> = roots.iter().map(|&z| joukowski(Complex64::new(z, 0.0)).re).collect();
    for (&z, &lambda) in roots.iter().zip(&eigenvalues) {
        let gap = eigenvalues
            .iter()
            .filter(|&&other| other != lambda)
            .fold(lambda.abs() - 1.0, |g, other| g.min((other - lambda).abs()));
        let weight = atom_weight(&c, resolvent.symbol_mu(), z);
        let limit = limit_weight(&resolvent, lambda, gap)?;
        let mismatch = (weight - limit).abs() / weight.abs().max(f64::MIN_POSITIVE);
        if !(mismatch <= WEIGHT_CHECK_TOLERANCE) {
            diagnostics.push(format!(
                "atom at {lambda}: weight {weight} differs from limit {limit} (relative {mismatch:e})"
            ));
        }
        atoms.push(Atom {
            z,
            lambda: back_map.to_user(lambda),
            weight,
            limit_weight: limit,
        });
    }
    atoms.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let pc_cheb = resolvent.p_c().clone();
    let breaks = peak_breaks(&c);
    Ok(SpectralMeasure {
        n: norm.size(),
        c,
        pc: pc_cheb.to_monomial(),
        pc_cheb,
        pc_mu_cheb: resolvent.p_c_mu().clone(),
        atoms,
        back_map,
        breaks,
        diagnostics,
    })
}

impl SpectralMeasure {
    /// `p_C` in the monomial basis, normalised coordinates.
    pub fn pc(&self) -> &Poly<f64> {
        &self.pc
    }

    /// `p_C` in the `U_k` basis, normalised coordinates.
    pub fn pc_cheb(&self) -> &ChebSeries<f64> {
        &self.pc_cheb
    }

    pub fn pc_mu_cheb(&self) -> &ChebSeries<f64> {
        &self.pc_mu_cheb
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Map from normalised to user coordinates (`to_user`).
    pub fn back_map(&self) -> &AffineMap {
        &self.back_map
    }

    /// Size of the perturbation block of the normalised operator.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Non-fatal findings, such as a weight that disagrees with its limit.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// Essential spectrum in user coordinates.
    pub fn continuous_support(&self) -> (f64, f64) {
        let (a, b) = (self.back_map.to_user(-1.0), self.back_map.to_user(1.0));
        (a.min(b), a.max(b))
    }

    /// Density of the absolutely continuous part at `s`.
    pub fn density_at(&self, s: f64) -> Result<f64> {
        let x = self.back_map.to_normalized(s);
        if !(x.abs() <= 1.0 - EDGE_MARGIN) {
            return Err(Error::OutsideSupport { at: s });
        }
        let rho = 2.0 / PI * (1.0 - x * x).sqrt() / self.pc_cheb.eval(&x);
        Ok(rho * self.back_map.scale)
    }

    /// `count` samples `(s, ρ(s))` at Chebyshev points, increasing in `s`.
    pub fn density_samples(&self, count: usize) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = chebyshev_nodes(count)
            .map(|x| {
                let s = self.back_map.to_user(x);
                let rho = 2.0 / PI * (1.0 - x * x).sqrt() / self.pc_cheb.eval(&x);
                (s, rho * self.back_map.scale)
            })
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    /// `∫ f dμ` for several functions at once; `f` returns all integrands
    /// at a point. The continuous part is integrated in `θ = arccos x` by
    /// adaptive Gauss–Legendre panels, refined until halving a panel
    /// changes no component.
    pub fn integrate_many<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(f64) -> Vec<f64>,
    {
        let rule = GaussLegendre::new(NonZeroUsize::new(PANEL_POINTS).unwrap());
        // Signed and absolute panel integrals of every component.
        let panel = |a: f64, b: f64| -> (Vec<f64>, Vec<f64>) {
            let (h, mid) = (0.5 * (b - a), 0.5 * (b + a));
            let (mut acc, mut abs): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
            for &(t, w) in rule.as_node_weight_pairs() {
                let theta = mid + h * t;
                let x = theta.cos();
                let sin = theta.sin();
                let g = 2.0 / PI * sin * sin / self.c.eval_complex(Complex64::cis(theta)).norm_sqr();
                let values = f(self.back_map.to_user(x));
                if acc.is_empty() {
                    acc = vec![0.0; values.len()];
                    abs = vec![0.0; values.len()];
                }
                for ((a, m), v) in acc.iter_mut().zip(abs.iter_mut()).zip(values) {
                    *a += w * h * g * v;
                    *m += w * h * g * v.abs();
                }
            }
            (acc, abs)
        };
        let mut stack: Vec<(f64, f64, Vec<f64>)> = Vec::new();
        let mut scale: Vec<f64> = Vec::new();
        for w in self.breaks.windows(2) {
            let (v, m) = panel(w[0], w[1]);
            scale.resize(m.len(), 1.0);
            for (s, x) in scale.iter_mut().zip(&m) {
                *s += x;
            }
            stack.push((w[0], w[1], v));
        }
        let mut total = vec![0.0; scale.len()];
        let mut splits = 0;
        while let Some((a, b, coarse)) = stack.pop() {
            let m = 0.5 * (a + b);
            let ((left, left_abs), (right, right_abs)) = (panel(a, m), panel(m, b));
            let tol = PANEL_TOLERANCE * ((b - a) / PI).sqrt();
            let settled = b - a < MIN_PANEL_WIDTH
                || splits >= MAX_SPLITS
                || (0..coarse.len()).all(|i| {
                    let diff = (coarse[i] - left[i] - right[i]).abs();
                    diff <= (tol * scale[i]).max(ROUNDING_FLOOR * (left_abs[i] + right_abs[i]))
                });
            if settled {
                for (t, (l, r)) in total.iter_mut().zip(left.iter().zip(&right)) {
                    *t += l + r;
                }
            } else {
                splits += 1;
                stack.push((a, m, left));
                stack.push((m, b, right));
            }
        }
        for atom in &self.atoms {
            for (a, v) in total.iter_mut().zip(f(atom.lambda)) {
                *a += atom.weight * v;
            }
        }
        total
    }

    /// `∫ f dμ`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.integrate_many(|s| vec![f(s)])[0]
    }

    /// `∫ f dμ` for complex-valued `f`.
    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        let v = self.integrate_many(|s| {
            let w = f(s);
            vec![w.re, w.im]
        });
        Complex64::new(v[0], v[1])
    }

    /// Mass of the continuous part plus the atom weights.
    pub fn total_mass(&self) -> f64 {
        self.integrate(|_| 1.0)
    }

    /// `∫ dμ(s)/(s − λ)` by quadrature; an independent check on the resolvent.
    pub fn stieltjes_oracle(&self, lambda: Complex64) -> Result<Complex64> {
        let (a, b) = self.continuous_support();
        let nearest = lambda.re.clamp(a, b);
        if (lambda - nearest).norm() < ORACLE_MIN_DISTANCE {
            return Err(Error::CutEvaluation { at: lambda });
        }
        if let Some(atom) = self
            .atoms
            .iter()
            .find(|atom| (lambda - atom.lambda).norm() < ORACLE_MIN_DISTANCE)
        {
            return Err(Error::Pole {
                at: Complex64::new(atom.lambda, 0.0),
            });
        }
        Ok(self.integrate_complex(|s| (Complex64::new(s, 0.0) - lambda).inv()))
    }

    /// Checks the structural properties every spectral measure must have.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMeasure(msg));
        if self.atoms.len() > self.n {
            return bad(format!("{} atoms for a rank-{} perturbation", self.atoms.len(), self.n));
        }
        for atom in &self.atoms {
            let lambda = self.back_map.to_normalized(atom.lambda);
            let expect = joukowski(Complex64::new(atom.z, 0.0)).re;
            if !(atom.z.abs() < 1.0 && atom.z != 0.0) {
                return bad(format!("atom root z = {} outside (−1, 1)∖{{0}}", atom.z));
            }
            if !(lambda.abs() > 1.0) {
                return bad(format!("atom at {} inside the essential spectrum", atom.lambda));
            }
            if (lambda - expect).abs() > 1e-12 * expect.abs() {
                return bad(format!("atom at {} does not match its root {}", atom.lambda, atom.z));
            }
            if !(atom.weight > 0.0) {
                return bad(format!("atom at {} has weight {}", atom.lambda, atom.weight));
            }
        }
        if self.pc.degree().unwrap_or(0) <= STURM_MAX_DEGREE {
            let inner = 1.0 - 1e-9;
            if let Ok(count) = sturm_count(&self.pc, -inner, inner) {
                if count > 0 {
                    return bad(format!("p_C has {count} roots in (−1, 1)"));
                }
            }
        }
        if let Some(x) = chebyshev_nodes(POSITIVITY_NODES).find(|x| !(self.pc_cheb.eval(x) > 0.0)) {
            return bad(format!("p_C is not positive at {x}"));
        }
        let mass = self.total_mass();
        if !((mass - 1.0).abs() <= MASS_TOLERANCE) {
            return bad(format!("total mass {mass} differs from 1"));
        }
        Ok(())
    }
}
