mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use jacobi_spectra::connection::{connection_dense, connection_structured};
use jacobi_spectra::operators::tridiag_norm_bound;
use jacobi_spectra::operators::perturbation_norm_bound;
use jacobi_spectra::polynomials::{
    cheb_to_joukowski, eval_orthonormal, mu_derivative_cheb, sturm_count, ChebSeries, Poly,
};
use jacobi_spectra::spectral::{disc_resolvent, joukowski, resolvent, spectral_measure};
use jacobi_spectra::validated::validated_spectrum;
use jacobi_spectra::JacobiOperator;

fn operator() -> impl Strategy<Value = JacobiOperator> {
    (1usize..=8).prop_flat_map(|n| {
        (
            prop::collection::vec(-1.0..=1.0f64, n),
            prop::collection::vec(0.05..=1.0f64, n - 1),
        )
            .prop_map(|(d, o)| JacobiOperator::perturbed_free(d, o).unwrap())
    })
}

fn disc_point(lo: f64, hi: f64) -> impl Strategy<Value = Complex64> {
    (lo..hi, 0.0..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Dense `N × N` block of the operator.
fn block(op: &JacobiOperator, size: usize) -> Vec<Vec<f64>> {
    op.principal_block(size)
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_polynomials_are_chebyshev(k in 0usize..=50, s in -0.999..0.999f64) {
        let theta = s.acos();
        let want = ((k + 1) as f64 * theta).sin() / theta.sin();
        let got = eval_orthonormal(&JacobiOperator::free(), k, Complex64::new(s, 0.0));
        prop_assert!((got.re - want).abs() <= 1e-10 * want.abs().max(1.0));
    }

    #[test]
    fn joukowski_conversion_evaluates(
        coeffs in prop::collection::vec(-1.0..1.0f64, 1..10),
        z in disc_point(0.1, 0.9),
    ) {
        let f = ChebSeries::new(coeffs);
        let lhs = cheb_to_joukowski(&f).eval_complex(z);
        let rhs = f.eval_complex((z + z.inv()) / 2.0);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn mu_derivative_matches_quadrature(
        coeffs in prop::collection::vec(-1.0..1.0f64, 1..8),
        lam in -0.95..0.95f64,
    ) {
        let f = ChebSeries::new(coeffs);
        let fl = f.eval(&lam);
        // Gauss–Chebyshev second kind for dμ_Δ
        let nodes = 200;
        let quad: f64 = (1..=nodes)
            .map(|k| {
                let t = k as f64 * PI / (nodes + 1) as f64;
                let s = t.cos();
                let q = if (s - lam).abs() < 1e-12 { 0.0 } else { (f.eval(&s) - fl) / (s - lam) };
                q * 2.0 / (nodes + 1) as f64 * t.sin().powi(2)
            })
            .sum();
        prop_assert!((mu_derivative_cheb(&f).eval(&lam) - quad).abs() <= 1e-8);
    }

    #[test]
    fn sturm_matches_sign_scan(roots in prop::collection::btree_set(-90i32..90, 1..8), lead in 0.5..2.0f64) {
        let roots: Vec<f64> = roots.iter().map(|&r| r as f64 / 100.0 + 0.001).collect();
        let mut p = Poly::new(vec![lead]);
        for r in &roots {
            p = &p * &Poly::new(vec![-r, 1.0]);
        }
        let n = 1_000_000;
        let mut changes = 0;
        let mut prev = p.eval(&-1.0);
        for k in 1..=n {
            let x = -1.0 + 2.0 * k as f64 / n as f64;
            let v = p.eval(&x);
            if v.signum() != prev.signum() {
                changes += 1;
            }
            prev = v;
        }
        prop_assert_eq!(sturm_count(&p, -1.0, 1.0).unwrap(), changes);
        prop_assert_eq!(changes, roots.len());
    }

    #[test]
    fn five_point_relation_and_commutation(j in operator(), d in operator()) {
        let size = 20;
        let cm = connection_dense(&j, &d, size);
        let rows = cm.rows();
        let scale = cm.max_abs().max(1.0);
        let (jb, db) = (block(&j, size), block(&d, size));
        let cj = matmul(&rows, &jb);
        let dc = matmul(&db, &rows);
        for i in 0..size - 2 {
            for k in 0..size - 2 {
                prop_assert!((cj[i][k] - dc[i][k]).abs() <= 1e-10 * scale, "({}, {})", i, k);
            }
        }
    }

    #[test]
    fn columns_are_polynomials_of_target(j in operator(), d in operator()) {
        let size = 24;
        let cm = connection_dense(&j, &d, size);
        let db = block(&d, size);
        // P_k(D)e_0 by the recurrence of J applied to vectors
        let mut prev = vec![0.0; size];
        let mut cur = vec![0.0; size];
        cur[0] = 1.0;
        for k in 0..=10 {
            for i in 0..size {
                prop_assert!((cm.get(i, k) - cur[i]).abs() <= 1e-10 * cm.max_abs().max(1.0));
            }
            let dv: Vec<f64> = (0..size).map(|i| (0..size).map(|l| db[i][l] * cur[l]).sum()).collect();
            let beta_prev = if k == 0 { 0.0 } else { j.off(k - 1) };
            let next: Vec<f64> = (0..size)
                .map(|i| (dv[i] - j.diag(k) * cur[i] - beta_prev * prev[i]) / j.off(k))
                .collect();
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn structure_and_inverse(j in operator()) {
        let n = j.size();
        let cm = connection_dense(&j, &JacobiOperator::free(), 40);
        for k in 2 * n..40 {
            prop_assert!(cm.get(0, k).abs() <= 1e-10 * cm.max_abs());
        }
        let inv = connection_dense(&JacobiOperator::free(), &j, 40);
        let product = cm.matmul(&inv);
        for i in 0..40 {
            for k in i..40 {
                let want = if i == k { 1.0 } else { 0.0 };
                prop_assert!((product.get(i, k) - want).abs() <= 1e-10 * cm.max_abs() * inv.max_abs());
            }
        }
        let t0: f64 = (0..n.saturating_sub(1)).map(|k| 0.5 / j.off(k)).product();
        let sym = connection_structured(&j).unwrap().symbol();
        prop_assert!((sym.coeff(0) - t0).abs() <= 1e-12 * t0);
    }

    #[test]
    fn herglotz(j in operator(), re in -3.0..3.0f64, im in 1e-3..3.0f64) {
        let g = resolvent(&j, Complex64::new(re, im)).unwrap();
        prop_assert!(g.im > 0.0);
    }

    #[test]
    fn resolvent_agrees_with_disc_form(j in operator(), z in disc_point(0.1, 0.9)) {
        let c = connection_structured(&j).unwrap().symbol();
        prop_assume!(c.eval_complex(z).norm() > 1e-3 * c.max_abs_coeff());
        let g = resolvent(&j, joukowski(z)).unwrap();
        let h = disc_resolvent(&j, z).unwrap();
        prop_assert!((g - h).norm() <= 1e-11 * h.norm().max(1.0), "{} vs {}", g, h);
    }

    #[test]
    fn measure_invariants(j in operator()) {
        let m = spectral_measure(&j).unwrap();
        prop_assert!(m.atoms().len() <= j.size());
        for a in m.atoms() {
            prop_assert!(a.weight > 0.0 && a.lambda.abs() > 1.0);
        }
        m.check_invariants().unwrap();
    }

    #[test]
    fn validated_agrees_with_float_atoms(j in operator()) {
        let atoms = spectral_measure(&j).unwrap().atoms().to_vec();
        let coarse = validated_spectrum(&j, 1e-6).unwrap();
        let fine = validated_spectrum(&j, 1e-12).unwrap();
        prop_assert_eq!(coarse.len(), atoms.len());
        prop_assert_eq!(fine.len(), atoms.len());
        let b = perturbation_norm_bound(&j);
        for (a, (c, f)) in atoms.iter().zip(coarse.iter().zip(&fine)) {
            prop_assert_eq!(coarse.iter().filter(|e| e.contains(a.lambda)).count(), 1);
            prop_assert!(c.contains(f.midpoint()));
            let bound = 2.0 * (1.0 + b) * (2.0 + b) * c.z_box.width();
            prop_assert!(c.lambda_box.width() <= bound.max(4.0 * f64::EPSILON * a.lambda.abs()));
        }
        prop_assert!(tridiag_norm_bound(&j) >= atoms.iter().map(|a| a.lambda.abs()).fold(1.0, f64::max));
    }
}
