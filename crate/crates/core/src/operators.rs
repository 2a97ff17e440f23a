//! Jacobi operators that are Toeplitz outside a finite principal block.
//!
//! An operator is stored as its constant tail `(a∞, b∞)` together with the
//! finitely many entries that differ from it. Entry access is index
//! arithmetic; nothing infinite is ever materialised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Self-adjoint tridiagonal operator equal to a Toeplitz operator outside
/// its principal `n × n` block.
///
/// Diagonal entries are `pert_diag[i]` for `i < n` and `tail_diag` beyond;
/// the `(i, i+1)` entries are `pert_off[i]` for `i < n - 1` and `tail_off`
/// beyond. The perturbation arrays are always trimmed so that `n` is minimal.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOperator {
    tail_diag: f64,
    tail_off: f64,
    pert_diag: Vec<f64>,
    pert_off: Vec<f64>,
}

/// On-disk operator description.
///
/// `{"tail_diag": x, "tail_off": y, "pert_diag": [...], "pert_off": [...]}`.
/// The arrays need not be canonical; [`JacobiOperator::from_spec`] trims them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub tail_diag: f64,
    pub tail_off: f64,
    #[serde(default)]
    pub pert_diag: Vec<f64>,
    #[serde(default)]
    pub pert_off: Vec<f64>,
}

impl JacobiOperator {
    /// Builds an operator and brings it to canonical form.
    ///
    /// The perturbation size is `n = max(d, o + 1)` where `d` is one past the
    /// last diagonal entry differing from the tail and `o` one past the last
    /// differing off-diagonal entry (so `n = 0` for a pure Toeplitz operator).
    pub fn new(
        tail_diag: f64,
        tail_off: f64,
        pert_diag: Vec<f64>,
        pert_off: Vec<f64>,
    ) -> Result<Self> {
        if !tail_diag.is_finite() || !tail_off.is_finite() {
            return Err(Error::InvalidOperator("tail values must be finite".into()));
        }
        if tail_off <= 0.0 {
            return Err(Error::InvalidOperator(format!(
                "tail off-diagonal must be positive, got {tail_off}"
            )));
        }
        if let Some(x) = pert_diag.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidOperator(format!("non-finite diagonal entry {x}")));
        }
        if let Some(x) = pert_off.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::InvalidOperator(format!(
                "off-diagonal entries must be positive and finite, got {x}"
            )));
        }

        let diag_len = pert_diag
            .iter()
            .rposition(|&x| x != tail_diag)
            .map_or(0, |i| i + 1);
        let off_len = pert_off
            .iter()
            .rposition(|&x| x != tail_off)
            .map_or(0, |i| i + 1);
        let n = diag_len.max(if off_len > 0 { off_len + 1 } else { 0 });

        let mut diag: Vec<f64> = pert_diag.into_iter().take(n).collect();
        diag.resize(n, tail_diag);
        let mut off: Vec<f64> = pert_off.into_iter().take(n.saturating_sub(1)).collect();
        off.resize(n.saturating_sub(1), tail_off);

        Ok(Self {
            tail_diag,
            tail_off,
            pert_diag: diag,
            pert_off: off,
        })
    }

    /// Normalised operator (tail `(0, 1/2)`) from its perturbation entries.
    pub fn perturbed_free(pert_diag: Vec<f64>, pert_off: Vec<f64>) -> Result<Self> {
        Self::new(0.0, 0.5, pert_diag, pert_off)
    }

    /// The free operator Δ: zero diagonal, off-diagonal 1/2.
    pub fn free() -> Self {
        Self {
            tail_diag: 0.0,
            tail_off: 0.5,
            pert_diag: Vec::new(),
            pert_off: Vec::new(),
        }
    }

    /// Γ: Δ with its `(0,1)` entry replaced by `1/√2`.
    pub fn gamma() -> Self {
        Self::basic2(std::f64::consts::SQRT_2).expect("valid")
    }

    /// Δ with top-left entry `α/2`.
    pub fn basic1(alpha: f64) -> Result<Self> {
        Self::perturbed_free(vec![alpha / 2.0], Vec::new())
    }

    /// Δ with the `(0,1)` and `(1,0)` entries set to `β/2`.
    pub fn basic2(beta: f64) -> Result<Self> {
        Self::perturbed_free(vec![0.0, 0.0], vec![beta / 2.0])
    }

    pub fn from_spec(spec: &OperatorSpec) -> Result<Self> {
        Self::new(
            spec.tail_diag,
            spec.tail_off,
            spec.pert_diag.clone(),
            spec.pert_off.clone(),
        )
    }

    pub fn to_spec(&self) -> OperatorSpec {
        OperatorSpec {
            tail_diag: self.tail_diag,
            tail_off: self.tail_off,
            pert_diag: self.pert_diag.clone(),
            pert_off: self.pert_off.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: OperatorSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("plain data serialises")
    }

    /// Perturbation size `n`.
    pub fn size(&self) -> usize {
        self.pert_diag.len()
    }

    pub fn tail_diag(&self) -> f64 {
        self.tail_diag
    }

    pub fn tail_off(&self) -> f64 {
        self.tail_off
    }

    pub fn pert_diag(&self) -> &[f64] {
        &self.pert_diag
    }

    pub fn pert_off(&self) -> &[f64] {
        &self.pert_off
    }

    /// Diagonal entry `α_i`.
    #[inline]
    pub fn diag(&self, i: usize) -> f64 {
        self.pert_diag.get(i).copied().unwrap_or(self.tail_diag)
    }

    /// Off-diagonal entry `β_i`, i.e. entry `(i, i+1)`.
    #[inline]
    pub fn off(&self, i: usize) -> f64 {
        self.pert_off.get(i).copied().unwrap_or(self.tail_off)
    }

    /// Entry `(i, j)` of the infinite matrix.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag(i)
        } else if j == i + 1 {
            self.off(i)
        } else if i == j + 1 {
            self.off(j)
        } else {
            0.0
        }
    }

    /// Whether the tail is exactly that of Δ.
    pub fn is_normalized(&self) -> bool {
        self.tail_diag == 0.0 && self.tail_off == 0.5
    }

    pub fn is_free(&self) -> bool {
        self.is_normalized() && self.size() == 0
    }

    /// The operator with its first row and column deleted.
    pub fn without_first_row(&self) -> Self {
        let diag = self.pert_diag.iter().skip(1).copied().collect();
        let off = self.pert_off.iter().skip(1).copied().collect();
        Self::new(self.tail_diag, self.tail_off, diag, off).expect("sub-operator of a valid operator")
    }

    /// Dense principal `size × size` block, row-major.
    pub fn principal_block(&self, size: usize) -> Vec<Vec<f64>> {
        (0..size)
            .map(|i| (0..size).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// The affine change of variables `x ↦ (x − shift)·scale` that carries an
/// operator with tail `(shift, 1/(2·scale))` onto one with tail `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: f64,
    pub shift: f64,
}

impl AffineMap {
    pub fn new(scale: f64, shift: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && shift.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "affine map needs finite positive scale, got scale {scale}, shift {shift}"
            )));
        }
        Ok(Self { scale, shift })
    }

    pub fn identity() -> Self {
        Self {
            scale: 1.0,
            shift: 0.0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scale == 1.0 && self.shift == 0.0
    }

    /// User coordinate → normalised coordinate.
    pub fn to_normalized(&self, x: f64) -> f64 {
        (x - self.shift) * self.scale
    }

    /// Normalised coordinate → user coordinate.
    pub fn to_user(&self, y: f64) -> f64 {
        self.shift + y / self.scale
    }

    pub fn to_normalized_complex(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        (x - self.shift) * self.scale
    }

    pub fn to_user_complex(&self, y: num_complex::Complex64) -> num_complex::Complex64 {
        y / self.scale + self.shift
    }

    pub fn inverse(&self) -> Self {
        Self {
            scale: 1.0 / self.scale,
            shift: -self.shift * self.scale,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Self {
        Self {
            scale: self.scale * inner.scale,
            shift: inner.shift + self.shift / inner.scale,
        }
    }
}

/// Shift and scale `J` so that its tail becomes that of Δ.
///
/// Returns `J′ = (J − τI)σ` with `τ = tail_diag`, `σ = 1/(2·tail_off)` and the
/// map `(σ, τ)`; eigenvalues of `J` are `τ + λ′/σ`.
pub fn normalize_to_free(op: &JacobiOperator) -> (JacobiOperator, AffineMap) {
    if op.is_normalized() {
        return (op.clone(), AffineMap::identity());
    }
    let map = AffineMap {
        scale: 1.0 / (2.0 * op.tail_off),
        shift: op.tail_diag,
    };
    let diag = op.pert_diag.iter().map(|&a| map.to_normalized(a)).collect();
    let off = op.pert_off.iter().map(|&b| b * map.scale).collect();
    let normalized = JacobiOperator::new(0.0, 0.5, diag, off).expect("positive scale keeps validity");
    (normalized, map)
}

/// Inverse of [`normalize_to_free`].
pub fn denormalize(op: &JacobiOperator, map: &AffineMap) -> Result<JacobiOperator> {
    let diag = op.pert_diag.iter().map(|&a| map.to_user(a)).collect();
    let off = op.pert_off.iter().map(|&b| b / map.scale).collect();
    JacobiOperator::new(
        map.to_user(op.tail_diag),
        op.tail_off / map.scale,
        diag,
        off,
    )
}

/// Toeplitz-plus-finite-rank truncation of `J`.
///
/// Keeps `α_k` and `β_k` for `k < m` and replaces every other entry by the
/// tail (Δ for a normalised operator), so that `J − J^{[m]}` is supported on
/// rows and columns `≥ m` and is controlled by
/// `sup_{k≥m}|α_k| + sup_{k≥m}|β_k − 1/2|`.
pub fn truncate(op: &JacobiOperator, m: usize) -> JacobiOperator {
    if m >= op.size() {
        return op.clone();
    }
    let diag = op.pert_diag[..m].to_vec();
    let off = op.pert_off[..m.min(op.pert_off.len())].to_vec();
    JacobiOperator::new(op.tail_diag, op.tail_off, diag, off).expect("sub-data of a valid operator")
}

/// `3(sup|a_kk| + sup|a_k,k+1|)`, an upper bound on the 2-norm of `J`.
pub fn tridiag_norm_bound(op: &JacobiOperator) -> f64 {
    let diag = op
        .pert_diag
        .iter()
        .fold(op.tail_diag.abs(), |m, &x| m.max(x.abs()));
    let off = op
        .pert_off
        .iter()
        .fold(op.tail_off.abs(), |m, &x| m.max(x.abs()));
    3.0 * (diag + off)
}

/// The same bound applied to `J − T`, `T` the Toeplitz tail of `J`.
pub fn perturbation_norm_bound(op: &JacobiOperator) -> f64 {
    let diag = op
        .pert_diag
        .iter()
        .fold(0.0_f64, |m, &x| m.max((x - op.tail_diag).abs()));
    let off = op
        .pert_off
        .iter()
        .fold(0.0_f64, |m, &x| m.max((x - op.tail_off).abs()));
    3.0 * (diag + off)
}

/// Rows past which [`choose_truncation`] gives up.
pub const TRUNCATION_CAP: usize = 1 << 32;

/// Smallest `m` with `tail_bound(m) < ε/6`, assuming `tail_bound` is
/// nonincreasing.
///
/// `tail_bound(m)` must bound `sup_{k≥m}|α_k| + sup_{k≥m}|β_k − 1/2|`.
pub fn choose_truncation<F>(tail_bound: F, epsilon: f64) -> Result<usize>
where
    F: Fn(usize) -> f64,
{
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let target = epsilon / 6.0;
    let passes = |m: usize| tail_bound(m) < target;
    if passes(0) {
        return Ok(0);
    }
    // exponential search for an upper end, then bisect
    let mut hi = 1usize;
    while !passes(hi) {
        if hi >= TRUNCATION_CAP {
            return Err(Error::IterationCap {
                target,
                cap: TRUNCATION_CAP,
            });
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passes(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Recurrence coefficients `(α_k, β_k)` of the orthonormal Jacobi
/// polynomials for the weight `(1−s)^a (1+s)^b` on `[−1, 1]`.
pub fn jacobi_coefficients(a: f64, b: f64, k: usize) -> Result<(f64, f64)> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::InvalidArgument(format!(
            "Jacobi parameters must exceed -1, got ({a}, {b})"
        )));
    }
    let s = a + b;
    let kf = k as f64;
    let alpha = if k == 0 {
        // limit of (b²−a²)/(s(s+2)), finite also when s = 0
        (b - a) / (s + 2.0)
    } else {
        (b * b - a * a) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
    };
    // β_k is the formula's β_{(k+1)−1}
    let j = kf + 1.0;
    let beta = if k == 0 {
        2.0 * ((1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))).sqrt()
    } else {
        let num = j * (j + a) * (j + b) * (j + s);
        let den = (2.0 * j + s - 1.0) * (2.0 * j + s) * (2.0 * j + s) * (2.0 * j + s + 1.0);
        2.0 * (num / den).sqrt()
    };
    if !alpha.is_finite() || !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "degenerate Jacobi coefficients at k = {k} for ({a}, {b})"
        )));
    }
    Ok((alpha, beta))
}

/// Jacobi operator of the normalised Jacobi polynomials, truncated to its
/// first `rows` recurrence coefficients (`α_k, β_k` for `k < rows`).
pub fn jacobi_family(a: f64, b: f64, rows: usize) -> Result<JacobiOperator> {
    if rows == 0 {
        return Err(Error::InvalidArgument("need at least one row".into()));
    }
    let mut diag = Vec::with_capacity(rows);
    let mut off = Vec::with_capacity(rows);
    for k in 0..rows {
        let (alpha, beta) = jacobi_coefficients(a, b, k)?;
        diag.push(alpha);
        off.push(beta);
    }
    JacobiOperator::perturbed_free(diag, off)
}

/// Legendre polynomials: `α_k = 0`, `β_{k−1} = k/√(4k²−1)`.
pub fn legendre(rows: usize) -> Result<JacobiOperator> {
    jacobi_family(0.0, 0.0, rows)
}

/// Ultraspherical polynomials with spectral measure `∝ (1 − s²)^{γ+1/2}`.
pub fn ultraspherical(gamma: f64, rows: usize) -> Result<JacobiOperator> {
    jacobi_family(gamma + 0.5, gamma + 0.5, rows)
}

/// Discrete Schrödinger operator with decaying random potential
/// `α_k = 3(2r_k − 1)/(k+1)²`, `β_k = 1/2`, `r_k` uniform on `[0, 1)`.
pub fn schrodinger_random(seed: u64, rows: usize) -> JacobiOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag = (0..rows)
        .map(|k| {
            let r: f64 = rng.random();
            3.0 * (2.0 * r - 1.0) / ((k + 1) as f64).powi(2)
        })
        .collect();
    JacobiOperator::perturbed_free(diag, Vec::new()).expect("bounded potential")
}

/// `sup_{k≥m}|β_k − 1/2|` for the Legendre operator (its `α_k` vanish).
///
/// `β_k − 1/2` is positive and decreasing in `k`, so the supremum is
/// attained at `k = m`.
pub fn legendre_tail_bound(m: usize) -> f64 {
    let j = (m + 1) as f64;
    j / (4.0 * j * j - 1.0).sqrt() - 0.5
}

/// Bound for [`schrodinger_random`]: `|α_k| ≤ 3/(k+1)²`.
pub fn schrodinger_tail_bound(m: usize) -> f64 {
    3.0 / ((m + 1) as f64).powi(2)
}

/// Exact tail quantity of a finite-rank normalised operator.
pub fn finite_rank_tail_bound(op: &JacobiOperator) -> impl Fn(usize) -> f64 + '_ {
    move |m| {
        let diag = (m..op.size()).fold(0.0_f64, |s, k| s.max((op.diag(k) - op.tail_diag).abs()));
        let off = (m..op.size()).fold(0.0_f64, |s, k| s.max((op.off(k) - op.tail_off).abs()));
        diag + off
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_trimming() {
        let op = JacobiOperator::new(0.0, 0.5, vec![1.0, 0.0, 0.0], vec![0.5, 0.5, 0.5]).unwrap();
        assert_eq!(op.size(), 1);
        assert!(op.pert_off().is_empty());

        let op = JacobiOperator::new(0.0, 0.5, vec![], vec![0.5, 0.7]).unwrap();
        assert_eq!(op.size(), 3);
        assert_eq!(op.pert_diag(), &[0.0, 0.0, 0.0]);
        assert_eq!(op.pert_off(), &[0.5, 0.7]);

        let op = JacobiOperator::new(0.0, 0.5, vec![0.0; 5], vec![0.5; 4]).unwrap();
        assert!(op.is_free());
    }

    #[test]
    fn rejects_nonpositive_off_diagonals() {
        assert!(JacobiOperator::new(0.0, 0.5, vec![0.0], vec![0.0]).is_err());
        assert!(JacobiOperator::new(0.0, -1.0, vec![], vec![]).is_err());
        assert!(JacobiOperator::new(0.0, 0.5, vec![f64::NAN], vec![]).is_err());
    }

    #[test]
    fn entries_follow_index_arithmetic() {
        let op = JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75]).unwrap();
        assert_eq!(op.entry(0, 0), 0.75);
        assert_eq!(op.entry(1, 0), 1.0);
        assert_eq!(op.entry(2, 1), 0.75);
        assert_eq!(op.entry(2, 3), 0.5);
        assert_eq!(op.entry(7, 7), 0.0);
        assert_eq!(op.entry(0, 2), 0.0);
    }

    #[test]
    fn normalizing_free_is_identity() {
        let (op, map) = normalize_to_free(&JacobiOperator::free());
        assert!(op.is_free());
        assert!(map.is_identity());
        let (op, map) = normalize_to_free(&JacobiOperator::gamma());
        assert_eq!(op, JacobiOperator::gamma());
        assert!(map.is_identity());
    }

    #[test]
    fn normalizing_shifted_tail() {
        let op = JacobiOperator::new(1.0, 1.0, vec![2.0], vec![]).unwrap();
        let (norm, map) = normalize_to_free(&op);
        assert_eq!(map.scale, 0.5);
        assert_eq!(map.shift, 1.0);
        assert!(norm.is_normalized());
        assert_eq!(norm.diag(0), 0.5);
        let back = denormalize(&norm, &map).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn affine_inverse_and_compose() {
        let m = AffineMap::new(0.3, -1.7).unwrap();
        let id = m.compose(&m.inverse());
        assert!((id.scale - 1.0).abs() < 1e-15 && id.shift.abs() < 1e-15);
        for x in [-3.0, 0.0, 2.5] {
            assert!((m.to_user(m.to_normalized(x)) - x).abs() < 1e-15);
            assert!((m.inverse().to_normalized(x) - m.to_user(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn truncation_examples() {
        assert!(truncate(&JacobiOperator::free(), 5).is_free());
        let leg = legendre(20).unwrap();
        let t = truncate(&leg, 1);
        assert_eq!(t.diag(0), 0.0);
        assert!((t.off(0) - 1.0 / 3f64.sqrt()).abs() < 4e-16);
        assert_eq!(t.off(1), 0.5);
        assert_eq!(truncate(&leg, 40), leg);
        assert_eq!(truncate(&leg, 20), leg);
    }

    #[test]
    fn norm_bounds() {
        assert_eq!(tridiag_norm_bound(&JacobiOperator::free()), 1.5);
        assert!((tridiag_norm_bound(&JacobiOperator::gamma()) - 3.0 / 2f64.sqrt()).abs() < 1e-15);
        let op = JacobiOperator::perturbed_free(vec![1.0], vec![]).unwrap();
        assert_eq!(tridiag_norm_bound(&op), 4.5);
        assert_eq!(perturbation_norm_bound(&op), 3.0);
    }

    #[test]
    fn chebyshev_special_cases() {
        let u = jacobi_family(0.5, 0.5, 10).unwrap();
        for k in 0..10 {
            assert!(u.diag(k).abs() < 1e-15);
            assert!((u.off(k) - 0.5).abs() < 1e-15);
        }
        let t = jacobi_family(-0.5, -0.5, 10).unwrap();
        assert!((t.off(0) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        for k in 1..10 {
            assert!((t.off(k) - 0.5).abs() < 1e-15);
            assert!(t.diag(k).abs() < 1e-15);
        }
        let l = legendre(1).unwrap();
        assert!((l.off(0) - 1.0 / 3f64.sqrt()).abs() < 4e-16);
    }

    #[test]
    fn jacobi_degenerate_first_row() {
        // a + b = 0 makes the generic k = 0 formula 0/0
        let (alpha, _) = jacobi_coefficients(0.3, -0.3, 0).unwrap();
        assert!((alpha - (-0.3f64 - 0.3) / 2.0).abs() < 1e-15);
        assert!(jacobi_coefficients(-1.0, 0.0, 0).is_err());
    }

    #[test]
    fn truncation_choice() {
        let m = choose_truncation(|m| 1.0 / (m as f64).powi(2), 6e-4).unwrap();
        assert_eq!(m, 101);
        let op = JacobiOperator::perturbed_free(vec![0.3, 0.0, -0.2], vec![0.6]).unwrap();
        assert_eq!(choose_truncation(finite_rank_tail_bound(&op), 1e-3).unwrap(), op.size());
        assert!(matches!(
            choose_truncation(|_| 1.0, 1e-3),
            Err(Error::IterationCap { .. })
        ));
        let m = choose_truncation(legendre_tail_bound, 1e-3).unwrap();
        assert!(legendre_tail_bound(m) < 1e-3 / 6.0);
        assert!(legendre_tail_bound(m - 1) >= 1e-3 / 6.0);
    }

    #[test]
    fn json_round_trip() {
        let op = JacobiOperator::perturbed_free(vec![0.75, -0.25, 0.5], vec![1.0, 0.75]).unwrap();
        let back = JacobiOperator::from_json(&op.to_json()).unwrap();
        assert_eq!(op, back);
        let parsed = JacobiOperator::from_json(
            r#"{"tail_diag": 0, "tail_off": 0.5, "pert_diag": [0.75, -0.25, 0.5], "pert_off": [1, 0.75]}"#,
        )
        .unwrap();
        assert_eq!(parsed, op);
        assert!(matches!(JacobiOperator::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn schrodinger_is_deterministic() {
        let a = schrodinger_random(7, 30);
        let b = schrodinger_random(7, 30);
        assert_eq!(a, b);
        for k in 0..30 {
            assert!(a.diag(k).abs() <= schrodinger_tail_bound(k));
        }
    }
}
