//! Finite-section engines against closed forms and direct computations.

use std::f64::consts::PI;

use fsq_core::finite_section::{
    essential_points, pseudospectrum, resolvent_s_min, set_limits, stability_scan, szego_functional,
    szego_functional_with, truncation_spectra, EssentialOptions, GridSpec, PiecewisePolynomial, SetLimitOptions,
    StabilityOptions,
};
use fsq_core::linalg::{ComplexMatrix, C64};
use fsq_core::operators::{truncate, Filtration, OperatorModel, SequenceRule, Support};
use fsq_core::random::trial_rng;
use rand::Rng;

fn coord() -> Filtration {
    Filtration::coordinate()
}

#[test]
fn toeplitz_truncations_have_cosine_spectra() {
    let m = OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.0, 1.0);
    for (n, ev) in truncation_spectra(&m, &coord(), &[1, 7, 64, 300]).unwrap() {
        let mut exact: Vec<f64> = (1..=n).map(|k| 2.0 * (k as f64 * PI / (n as f64 + 1.0)).cos()).collect();
        exact.sort_by(f64::total_cmp);
        for (x, y) in ev.iter().zip(&exact) {
            assert!((x - y).abs() < 1e-11, "n={n}: {x} vs {y}");
        }
    }
}

#[test]
fn two_sided_windows_give_the_same_toeplitz_matrix() {
    let one = OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.3, -0.7);
    let two = OperatorModel::tridiagonal_toeplitz(Support::TwoSided, 0.3, -0.7);
    for n in [1, 4, 9] {
        let a = truncate(&one, &coord(), n).unwrap().matrix;
        let b = truncate(&two, &coord(), n).unwrap().matrix;
        assert_eq!(a, b);
        // constant diagonals
        for i in 0..n {
            for j in 0..n {
                if i > 0 && j > 0 {
                    assert_eq!(a[(i, j)], a[(i - 1, j - 1)]);
                }
            }
        }
    }
}

/// (1/2pi) int (2 cos t)^2 dt by the periodic trapezoid rule.
fn quadrature_oracle(samples: usize) -> f64 {
    (0..samples)
        .map(|s| (2.0 * (2.0 * PI * s as f64 / samples as f64).cos()).powi(2))
        .sum::<f64>()
        / samples as f64
}

#[test]
fn szego_square_against_quadrature_and_exact_finite_values() {
    let oracle = quadrature_oracle(4096);
    assert!((oracle - 2.0).abs() < 1e-12);
    let m = OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.0, 1.0);
    let seq = szego_functional(&m, &coord(), &PiecewisePolynomial::polynomial(vec![0.0, 0.0, 1.0]), 120).unwrap();
    for r in &seq.rows {
        // (1/n) sum 4 cos^2(k pi/(n+1)) = 2 (n-1)/n
        let exact = 2.0 * (r.n as f64 - 1.0) / r.n as f64;
        assert!((r.value - exact).abs() < 1e-11, "n={}: {} vs {exact}", r.n, r.value);
    }
    assert!((seq.limit_estimate - oracle).abs() < 0.05);
}

#[test]
fn szego_is_linear_and_normalized() {
    let m = OperatorModel::tridiagonal_toeplitz(Support::TwoSided, 0.5, 1.0);
    let f = |x: f64| x.powi(3) - x;
    let g = |x: f64| (x * 0.3).sin();
    let sf = szego_functional_with(&m, &coord(), f, 30).unwrap();
    let sg = szego_functional_with(&m, &coord(), g, 30).unwrap();
    let sh = szego_functional_with(&m, &coord(), |x| 2.0 * f(x) - 3.0 * g(x), 30).unwrap();
    for ((a, b), c) in sf.rows.iter().zip(&sg.rows).zip(&sh.rows) {
        assert!((2.0 * a.value - 3.0 * b.value - c.value).abs() < 1e-12);
    }
    let one = szego_functional(&m, &coord(), &PiecewisePolynomial::constant(1.0), 30).unwrap();
    assert!(one.rows.iter().all(|r| r.value == 1.0));
}

#[test]
fn jordan_pseudospectrum_matches_dense_svd() {
    let n = 40;
    let a = truncate(&OperatorModel::unilateral_shift(), &coord(), n).unwrap().matrix;
    let mut rng = trial_rng(300, 0);
    for _ in 0..100 {
        let lambda = C64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let shifted = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            let z = a[(i, j)] - if i == j { lambda } else { C64::new(0.0, 0.0) };
            nalgebra::Complex::new(z.re, z.im)
        });
        let dense = shifted.svd(false, false).singular_values.min();
        let ours = resolvent_s_min(&a, lambda).unwrap();
        // the A*A route loses roughly half the digits near zero
        assert!((ours - dense).abs() < 1e-7 + 1e-9 * dense, "lambda={lambda}: {ours} vs {dense}");
    }
}

#[test]
fn zero_operator_pseudospectrum_is_the_disk() {
    let grid = GridSpec::square(C64::new(0.0, 0.0), 0.3, 0.01);
    let ps = pseudospectrum(&ComplexMatrix::zeros(3, 3), 0.1, &grid).unwrap();
    for idx in 0..grid.len() {
        let z = grid.point(idx);
        // exact boundary points are excluded only by rounding, so skip them
        if (z.norm() - 0.1).abs() > 1e-9 {
            assert_eq!(ps.membership[idx], z.norm() < 0.1, "{z}");
        }
    }
}

#[test]
fn hermitian_toeplitz_s_min_vanishes_at_eigenvalues() {
    let n = 5;
    let a = truncate(&OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.0, 1.0), &coord(), n).unwrap().matrix;
    for k in 1..=n {
        let l = 2.0 * (k as f64 * PI / (n as f64 + 1.0)).cos();
        assert!(resolvent_s_min(&a, C64::new(l, 0.0)).unwrap() < 1e-7);
        // normal matrix: s_min equals the distance to the spectrum
        let off = C64::new(l, 0.05);
        assert!((resolvent_s_min(&a, off).unwrap() - 0.05).abs() < 1e-10);
    }
}

#[test]
fn worked_set_limit_example() {
    let sets: Vec<(usize, Vec<C64>)> = (1..=200)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (n, vec![C64::new(sign + 1.0 / n as f64, 0.0), C64::new(0.0, 0.0)])
        })
        .collect();
    let s = set_limits(&sets, &SetLimitOptions::default()).unwrap();
    let sup: Vec<f64> = s.limsup.iter().map(|p| p.re).collect();
    assert_eq!(sup.len(), 3, "{sup:?}");
    for (got, want) in sup.iter().zip([-1.0, 0.0, 1.0]) {
        assert!((got - want).abs() <= 1e-2);
    }
    assert_eq!(s.liminf.len(), 1);
    assert!(s.liminf_contains(C64::new(0.0, 0.0), 1e-12));
    assert!(!s.liminf_contains(C64::new(1.0, 0.0), 1e-2));
}

#[test]
fn essential_counts_match_direct_counts() {
    let m = OperatorModel::diagonal(
        Support::OneSided,
        SequenceRule::Tabulated { values: vec![0.0], start: 1, tail: 1.0 },
    )
    .unwrap();
    let opts = EssentialOptions::defaults_for(128);
    let r = essential_points(&m, &coord(), &[0.0, 1.0, 0.5], &opts).unwrap();
    assert_eq!(r.verdict(1.0), Some(true));
    assert_eq!(r.verdict(0.0), Some(false));
    assert_eq!(r.verdict(0.5), Some(false));
    for cand in &r.candidates {
        for iv in &cand.intervals {
            for (&n, &count) in opts.samples.iter().zip(&iv.counts) {
                // eigenvalues are 0 once and 1 with multiplicity n-1
                let direct = (0..n)
                    .map(|k| if k == 0 { 0.0 } else { 1.0 })
                    .filter(|&x: &f64| (x - cand.lambda).abs() < iv.radius)
                    .count();
                assert_eq!(count, direct, "lambda={} r={} n={n}", cand.lambda, iv.radius);
            }
        }
    }
}

#[test]
fn one_plus_inverse_diagonal_inverse_norms() {
    let m = OperatorModel::diagonal(Support::OneSided, SequenceRule::OnePlusInverse { scale: 1.0 }).unwrap();
    let r = stability_scan(&m, &coord(), 50, &StabilityOptions::default()).unwrap();
    assert!(r.stable);
    for row in &r.rows {
        // smallest diagonal entry is 1 + 1/n
        let exact = row.n as f64 / (row.n as f64 + 1.0);
        assert!((row.inverse_norm.unwrap() - exact).abs() < 1e-12);
    }
}
