//! Dense linear algebra checked against nalgebra and closed forms.

use approx::assert_relative_eq;
use fsq_core::linalg::{
    hermitian_eig, hermitian_eigenvalues, inverse_norm, norms, positive_sqrt, singular_values, solve,
    symmetric_tridiagonal_eigenvalues, trace_norm, ComplexMatrix, Lu, C64,
};
use fsq_core::random::{ginibre, hermitian, trial_rng};
use nalgebra::DMatrix;

fn to_na(a: &ComplexMatrix) -> DMatrix<nalgebra::Complex<f64>> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let z = a[(i, j)];
        nalgebra::Complex::new(z.re, z.im)
    })
}

#[test]
fn singular_values_match_nalgebra_svd() {
    for t in 0..40 {
        let mut rng = trial_rng(100, t);
        let (r, c) = (1 + (t as usize % 7), 1 + (t as usize * 3 % 5));
        let a = ginibre(&mut rng, r, c);
        let mut ours = singular_values(&a).unwrap();
        let mut theirs: Vec<f64> = to_na(&a).svd(false, false).singular_values.iter().copied().collect();
        ours.sort_by(f64::total_cmp);
        theirs.sort_by(f64::total_cmp);
        assert_eq!(ours.len(), theirs.len());
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() <= 1e-9 * theirs.last().unwrap().max(1.0), "{ours:?} vs {theirs:?}");
        }
    }
}

#[test]
fn hermitian_eigenvalues_match_nalgebra() {
    for t in 0..30 {
        let mut rng = trial_rng(101, t);
        let n = 1 + t as usize % 24;
        let h = hermitian(&mut rng, n);
        let ours = hermitian_eigenvalues(&h).unwrap();
        let mut theirs: Vec<f64> = to_na(&h).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (x, y) in ours.iter().zip(&theirs) {
            assert_relative_eq!(x, y, epsilon = 1e-10 * n as f64);
        }
    }
}

/// det(A - lambda I) on a 3x3 real symmetric matrix by cofactor expansion.
fn char_poly_3(a: [[f64; 3]; 3], l: f64) -> f64 {
    let m = |i: usize, j: usize| a[i][j] - if i == j { l } else { 0.0 };
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

#[test]
fn eigenvalues_are_roots_of_the_characteristic_polynomial() {
    let a = [[2.0, -1.0, 0.5], [-1.0, 3.0, 1.0], [0.5, 1.0, -1.0]];
    let m = ComplexMatrix::from_real_rows(&a.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
    let ev = hermitian_eigenvalues(&m).unwrap();
    assert_eq!(ev.len(), 3);
    for &l in &ev {
        assert!(char_poly_3(a, l).abs() < 1e-11, "p({l}) = {}", char_poly_3(a, l));
    }
    assert_relative_eq!(ev.iter().sum::<f64>(), 4.0, epsilon = 1e-13);
}

#[test]
fn eigen_residuals_and_unitarity() {
    for t in 0..10 {
        let mut rng = trial_rng(102, t);
        let n = 8 + 7 * t as usize;
        let h = hermitian(&mut rng, n);
        let eig = hermitian_eig(&h).unwrap();
        let v = &eig.eigenvectors;
        let scale = norms(&h).unwrap().operator.max(1.0);
        let lv = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * eig.eigenvalues[j]);
        assert!((&h.matmul(v) - &lv).max_abs() <= 1e-10 * scale);
        assert!((&v.adjoint().matmul(v) - &ComplexMatrix::identity(n)).max_abs() <= 1e-10);
    }
}

#[test]
fn tridiagonal_toeplitz_closed_form() {
    // a0 = 0.5, a1 = 1: eigenvalues 0.5 + 2 cos(k pi / (n + 1))
    let n = 200;
    let ev = symmetric_tridiagonal_eigenvalues(&vec![0.5; n], &vec![1.0; n - 1]).unwrap();
    let mut exact: Vec<f64> = (1..=n)
        .map(|k| 0.5 + 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
        .collect();
    exact.sort_by(f64::total_cmp);
    for (x, y) in ev.iter().zip(&exact) {
        assert!((x - y).abs() < 1e-12);
    }
}

/// Thomas algorithm for a constant tridiagonal system.
fn thomas(sub: f64, diag: f64, sup: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup / diag;
    d[0] = rhs[0] / diag;
    for i in 1..n {
        let m = diag - sub * c[i - 1];
        c[i] = sup / m;
        d[i] = (rhs[i] - sub * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

#[test]
fn lu_matches_thomas_on_a_large_tridiagonal_system() {
    let n = 2000;
    let a = ComplexMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => C64::new(4.0, 0.0),
        1 => C64::new(1.0, 0.0),
        _ => C64::new(0.0, 0.0),
    });
    let rhs: Vec<f64> = (0..n).map(|i| ((i * 7) % 13) as f64 - 6.0).collect();
    let expect = thomas(1.0, 4.0, 1.0, &rhs);
    let got = solve(&a, &rhs.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>()).unwrap();
    let err = got.iter().zip(&expect).map(|(g, e)| (g - e).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12, "max error {err}");
}

#[test]
fn inverse_norm_times_s_min_is_one() {
    for t in 0..50 {
        let mut rng = trial_rng(103, t);
        let n = 1 + t as usize % 9;
        let a = ginibre(&mut rng, n, n);
        let inv = inverse_norm(&a).unwrap();
        let v = inv.value().expect("gaussian matrices are invertible");
        assert_relative_eq!(v * inv.s_min(), 1.0, epsilon = 1e-9);
        // agrees with the norm of the explicit inverse
        let explicit = singular_values(&Lu::factor(&a).unwrap().inverse()).unwrap();
        let top = explicit.iter().copied().fold(0.0, f64::max);
        assert_relative_eq!(top, v, max_relative = 1e-8);
    }
}

#[test]
fn norm_ordering_on_random_matrices() {
    for t in 0..1000 {
        let mut rng = trial_rng(104, t);
        let n = 1 + t as usize % 6;
        let a = ginibre(&mut rng, n, n);
        let nn = norms(&a).unwrap();
        let tn = trace_norm(&a).unwrap();
        assert!(tn >= nn.hilbert_schmidt - 1e-12 && nn.hilbert_schmidt >= nn.operator - 1e-12, "{tn} {nn:?}");
    }
}

#[test]
fn positive_sqrt_is_monotone_on_diagonals() {
    let small = ComplexMatrix::real_diag(&[0.0, 0.25, 1.0, 2.0]);
    let big = ComplexMatrix::real_diag(&[0.5, 0.25, 4.0, 3.0]);
    let (rs, rb) = (positive_sqrt(&small).unwrap(), positive_sqrt(&big).unwrap());
    for i in 0..4 {
        assert!(rs[(i, i)].re <= rb[(i, i)].re + 1e-15);
    }
    assert_relative_eq!(rb[(2, 2)].re, 2.0, epsilon = 1e-14);
}
