//! Hermitian eigensolver.
//!
//! A complex Householder reduction brings the matrix to Hermitian
//! tridiagonal form, a diagonal phase similarity makes the tridiagonal real,
//! and the implicit-shift QL iteration diagonalizes it. Columns whose
//! sub-subdiagonal part is already exactly zero skip their reflection, so
//! tridiagonal inputs (and Gram matrices of bidiagonal ones) cost `O(n^2)`.

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, ONE, ZERO};
use super::tolerance::Tolerances;
use crate::error::{domain, FsqError, Result};

/// Eigenvalues in ascending order with the matching unitary eigenvector frame
/// (eigenvector `i` is column `i`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V f(Λ) V*` for a real function of the eigenvalues.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..fl.len())
                .map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k])
                .sum()
        })
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[k]` couples `k` and `k + 1`; the last slot is zero.
    off: Vec<f64>,
    /// Unitary `Q D` carrying the real tridiagonal back to the input basis.
    basis: Option<ComplexMatrix>,
}

fn check_hermitian(a: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    if !a.is_square() {
        return domain(format!("expected a square matrix, got {}x{}", a.rows(), a.cols()));
    }
    if !a.is_hermitian(tol.hermitian_rel) {
        return domain(format!(
            "matrix is not Hermitian (asymmetry {:.3e})",
            a.hermitian_defect()
        ));
    }
    Ok(())
}

fn tridiagonalize(a: &ComplexMatrix, want_basis: bool) -> Tridiagonal {
    let n = a.rows();
    let mut w = a.hermitian_part();
    let mut q = want_basis.then(|| ComplexMatrix::identity(n));
    let mut v = vec![ZERO; n];
    let mut y = vec![ZERO; n];

    for k in 0..n.saturating_sub(2) {
        let s = k + 1;
        if ((s + 1)..n).all(|i| w[(i, k)] == ZERO) {
            continue;
        }
        // the reflector only depends on the direction of the column, so work
        // with it scaled to unit max-norm to keep squared norms representable
        let scale = (s..n).fold(0.0f64, |m, i| m.max(w[(i, k)].norm()));
        for i in s..n {
            v[i] = w[(i, k)] / scale;
        }
        let tail: f64 = ((s + 1)..n).map(|i| v[i].norm_sqr()).sum();
        let x0 = v[s];
        let norm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        v[s] -= alpha;
        let vnorm2 = v[s].norm_sqr() + tail;
        let beta = 2.0 / vnorm2;

        // B' = B - v u* - u v*,  u = beta B v - (beta^2 mu / 2) v,  mu = v* B v
        for i in s..n {
            let mut acc = ZERO;
            for j in s..n {
                acc += w[(i, j)] * v[j];
            }
            y[i] = acc;
        }
        let mu: f64 = (s..n).map(|i| (v[i].conj() * y[i]).re).sum();
        let half = 0.5 * beta * beta * mu;
        for i in s..n {
            y[i] = y[i] * beta - v[i] * half;
        }
        for i in s..n {
            for j in s..n {
                let delta = v[i] * y[j].conj() + y[i] * v[j].conj();
                w[(i, j)] -= delta;
            }
        }
        w[(s, k)] = alpha * scale;
        w[(k, s)] = (alpha * scale).conj();
        for i in (s + 1)..n {
            w[(i, k)] = ZERO;
            w[(k, i)] = ZERO;
        }

        if let Some(q) = q.as_mut() {
            // Q <- Q H acting on columns s..n
            for r in 0..n {
                let mut dot = ZERO;
                for j in s..n {
                    dot += q[(r, j)] * v[j];
                }
                if dot == ZERO {
                    continue;
                }
                let f = dot * beta;
                for j in s..n {
                    q[(r, j)] -= f * v[j].conj();
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    let mut off = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for k in 0..n.saturating_sub(1) {
        let e = w[(k + 1, k)];
        let mag = e.norm();
        off[k] = mag;
        phases[k + 1] = if mag == 0.0 { phases[k] } else { phases[k] * (e / mag) };
    }
    let basis = q.map(|mut q| {
        for r in 0..n {
            for c in 0..n {
                q[(r, c)] *= phases[c];
            }
        }
        q
    });
    Tridiagonal { diag, off, basis }
}

/// Implicit-shift QL on a real symmetric tridiagonal; rotations are
/// accumulated into `z` (row-major `n x n`) when given.
///
/// The matrix is scaled to unit max-norm first. Off-diagonals are deflated
/// when negligible against their diagonal neighbours or below `eps^2` of
/// the norm; the second test stops graded blocks of near-zero entries from
/// cascading into underflow.
fn tridiagonal_ql(
    d: &mut [f64],
    e: &mut [f64],
    z: Option<&mut [f64]>,
    max_iter: usize,
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let scale = d.iter().chain(e.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Ok(());
    }
    if !scale.is_finite() {
        return Err(FsqError::Domain("non-finite tridiagonal entry".into()));
    }
    d.iter_mut().chain(e.iter_mut()).for_each(|x| *x /= scale);
    let out = scaled_ql(d, e, z, max_iter);
    d.iter_mut().for_each(|x| *x *= scale);
    out
}

fn scaled_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>, max_iter: usize) -> Result<()> {
    let n = d.len();
    let floor = f64::EPSILON * f64::EPSILON;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iter {
                return Err(FsqError::NoConvergence(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eig_with(a, &Tolerances::default())
}

pub fn hermitian_eig_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    check_hermitian(a, tol)?;
    let n = a.rows();
    let Tridiagonal { mut diag, mut off, basis } = tridiagonalize(a, true);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut diag, &mut off, Some(&mut z), tol.max_ql_iterations)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let basis = basis.expect("basis requested");
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                let zk = z[k * n + src];
                if zk != 0.0 {
                    acc += basis[(r, k)] * zk;
                }
            }
            vectors[(r, col)] = acc;
        }
    }
    Ok(HermitianEigen {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        eigenvectors: vectors,
    })
}

/// Ascending eigenvalues only; skips eigenvector accumulation.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues_with(a, &Tolerances::default())
}

pub fn hermitian_eigenvalues_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    check_hermitian(a, tol)?;
    let Tridiagonal { mut diag, mut off, .. } = tridiagonalize(a, false);
    tridiagonal_ql(&mut diag, &mut off, None, tol.max_ql_iterations)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// Eigenvalues of a real symmetric tridiagonal matrix given by its diagonal
/// and off-diagonal.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n > 0 && off.len() + 1 != n {
        return domain("off-diagonal must have length n - 1");
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    tridiagonal_ql(&mut d, &mut e, None, Tolerances::default().max_ql_iterations)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}
