//! Seeded random ensembles for the fuzz suites.
//!
//! Trial `i` of a suite with seed `s` draws from `ChaCha8Rng` seeded with `s`
//! on stream `i`, so results do not depend on how trials are sharded across
//! threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64, ZERO};

/// Independent generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Standard complex Gaussian with `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ginibre(rng, n, n).hermitian_part()
}

/// Random positive semidefinite matrix `X* X` of random rank `1..=n`
/// (rank deficiency exercises the boundary of the positive cone).
pub fn positive<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let rank = rng.random_range(1..=n);
    ginibre(rng, rank, n).gram()
}

/// Haar-distributed unitary via Gram-Schmidt on a Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    orthonormalize_columns(&g)
}

/// Modified Gram-Schmidt (twice) on the columns of `a`.
pub fn orthonormalize_columns(a: &ComplexMatrix) -> ComplexMatrix {
    let (n, k) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<C64>> = (0..k).map(|j| a.column(j)).collect();
    for j in 0..k {
        for _ in 0..2 {
            for i in 0..j {
                let dot: C64 = cols[i].iter().zip(&cols[j]).map(|(u, v)| u.conj() * v).sum();
                let ci = cols[i].clone();
                for (x, u) in cols[j].iter_mut().zip(&ci) {
                    *x -= dot * u;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut out = ComplexMatrix::zeros(n, k);
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Orthogonal projection of random rank `1..=n` (or exactly `rank`).
pub fn projection<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: Option<usize>) -> ComplexMatrix {
    let r = rank.unwrap_or_else(|| rng.random_range(1..=n));
    let u = unitary(rng, n);
    let v = u.block(0, 0, n, r);
    &v * &v.adjoint()
}

/// Random composition of `total` into `parts` positive integers.
pub fn composition<R: Rng + ?Sized>(rng: &mut R, total: u64, parts: usize) -> Vec<u64> {
    assert!(parts >= 1 && total >= parts as u64);
    let mut cuts: Vec<u64> = Vec::with_capacity(parts - 1);
    while cuts.len() < parts - 1 {
        let c = rng.random_range(1..total);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Random complex vector with unit Gaussian entries.
pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Random complex scalar uniform in the unit square around zero.
pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    if z == ZERO {
        C64::new(0.5, 0.0)
    } else {
        z
    }
}
