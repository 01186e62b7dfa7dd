//! Singular values, norms, positive square roots and dense solves.
//!
//! Singular values come from the Hermitian eigenvalues of `A* A`. This
//! squares the condition number: a singular value `s` is resolved to about
//! `eps * ||A||^2 / s` absolute accuracy, and values below
//! `sqrt(eps) * ||A||` collapse to roughly that floor. The pseudospectra here
//! use `epsilon >= 1e-4`, well above the floor.

use serde::{Deserialize, Serialize};

use super::eigen::{hermitian_eig_with, hermitian_eigenvalues_with};
use super::matrix::{ComplexMatrix, C64, ZERO};
use super::tolerance::Tolerances;
use crate::error::{domain, FsqError, Result};

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let tol = Tolerances::default();
    let gram = if a.cols() <= a.rows() {
        a.gram()
    } else {
        a.adjoint().gram()
    };
    let mut s: Vec<f64> = hermitian_eigenvalues_with(&gram, &tol)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    s.reverse();
    Ok(s)
}

/// Smallest singular value of a square matrix.
pub fn smallest_singular_value(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return domain(format!("s_min needs a square matrix, got {}x{}", a.rows(), a.cols()));
    }
    if a.rows() == 0 {
        return domain("s_min of an empty matrix");
    }
    let vals = hermitian_eigenvalues_with(&a.gram(), &Tolerances::default())?;
    Ok(vals[0].max(0.0).sqrt())
}

/// Extreme singular values `(s_min, s_max)` of a square matrix from one
/// eigen-sweep.
pub fn extreme_singular_values(a: &ComplexMatrix) -> Result<(f64, f64)> {
    if !a.is_square() || a.rows() == 0 {
        return domain("extreme singular values need a non-empty square matrix");
    }
    let vals = hermitian_eigenvalues_with(&a.gram(), &Tolerances::default())?;
    let lo = vals[0].max(0.0).sqrt();
    let hi = vals[vals.len() - 1].max(0.0).sqrt();
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub operator: f64,
    pub hilbert_schmidt: f64,
    /// Sum of singular values; `None` for rectangular input.
    pub trace: Option<f64>,
}

pub fn norms(a: &ComplexMatrix) -> Result<Norms> {
    let s = singular_values(a)?;
    Ok(Norms {
        operator: s.first().copied().unwrap_or(0.0),
        hilbert_schmidt: a.frobenius_norm(),
        trace: a.is_square().then(|| s.iter().sum()),
    })
}

pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Trace norm of a square matrix.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return domain("trace norm needs a square matrix");
    }
    Ok(singular_values(a)?.iter().sum())
}

/// Operator norm of a Hermitian matrix, `max |lambda|`.
pub fn hermitian_operator_norm(a: &ComplexMatrix) -> Result<f64> {
    let v = hermitian_eigenvalues_with(a, &Tolerances::default())?;
    Ok(v.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
}

/// Trace norm of a Hermitian matrix, `sum |lambda|`.
pub fn hermitian_trace_norm(a: &ComplexMatrix) -> Result<f64> {
    let v = hermitian_eigenvalues_with(a, &Tolerances::default())?;
    Ok(v.iter().map(|x| x.abs()).sum())
}

/// Checks that `a` is Hermitian with minimum eigenvalue `>= -psd_rel * ||a||`.
pub fn check_positive_semidefinite(a: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    let vals = hermitian_eigenvalues_with(a, tol)?;
    let scale = vals.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    if let Some(&lo) = vals.first() {
        if lo < -tol.psd_rel * scale.max(f64::MIN_POSITIVE) {
            return domain(format!("matrix is not positive semidefinite (min eigenvalue {lo:.3e})"));
        }
    }
    Ok(())
}

/// Positive square root of a positive semidefinite matrix.
pub fn positive_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    positive_sqrt_with(a, &Tolerances::default())
}

pub fn positive_sqrt_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let eig = hermitian_eig_with(a, tol)?;
    let scale = eig.eigenvalues.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    if eig.min() < -tol.psd_rel * scale {
        return domain(format!(
            "square root of an indefinite matrix (min eigenvalue {:.3e})",
            eig.min()
        ));
    }
    Ok(eig.apply_function(|l| l.max(0.0).sqrt()))
}

/// LU factorization with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        Self::factor_with(a, &Tolerances::default())
    }

    /// Fails with [`FsqError::Singular`] when a pivot falls to
    /// `singular_rel * max|a_ij|` or below.
    pub fn factor_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !a.is_square() {
            return domain("LU needs a square matrix");
        }
        let n = a.rows();
        let floor = tol.singular_rel * a.max_abs();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= floor || pivot == 0.0 {
                return Err(FsqError::Singular { column: k, pivot });
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
            }
            let d = lu[(k, k)];
            for i in (k + 1)..n {
                let f = lu[(i, k)] / d;
                if f == ZERO {
                    continue;
                }
                lu[(i, k)] = f;
                for j in (k + 1)..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.perm.len();
        assert_eq!(b.len(), n, "rhs dimension mismatch");
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.perm.len();
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = ZERO);
            e[j] = C64::new(1.0, 0.0);
            inv.set_column(j, &self.solve(&e));
        }
        inv
    }
}

/// Solves `A x = b` by partial-pivoting LU.
pub fn solve(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if b.len() != a.rows() {
        return domain("right-hand side length does not match the matrix");
    }
    Ok(Lu::factor(a)?.solve(b))
}

/// `||A^{-1}||`, or a singular signal when `s_min <= singular_rel * ||A||`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum InverseNorm {
    Finite { value: f64, s_min: f64 },
    Singular { s_min: f64 },
}

impl InverseNorm {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Self::Finite { value, .. } => Some(value),
            Self::Singular { .. } => None,
        }
    }

    pub fn s_min(&self) -> f64 {
        match *self {
            Self::Finite { s_min, .. } | Self::Singular { s_min } => s_min,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Self::Singular { .. })
    }
}

pub fn inverse_norm(a: &ComplexMatrix) -> Result<InverseNorm> {
    inverse_norm_with(a, &Tolerances::default())
}

pub fn inverse_norm_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<InverseNorm> {
    let (s_min, s_max) = extreme_singular_values(a)?;
    if s_min <= tol.singular_rel * s_max {
        Ok(InverseNorm::Singular { s_min })
    } else {
        Ok(InverseNorm::Finite {
            value: 1.0 / s_min,
            s_min,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smin_of_diagonal_and_zero() {
        assert!((smallest_singular_value(&ComplexMatrix::real_diag(&[3.0, 1.0])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(smallest_singular_value(&ComplexMatrix::zeros(4, 4)).unwrap(), 0.0);
        assert!(smallest_singular_value(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn norms_of_identity_and_reflection() {
        for a in [ComplexMatrix::identity(2), ComplexMatrix::real_diag(&[1.0, -1.0])] {
            let n = norms(&a).unwrap();
            assert!((n.operator - 1.0).abs() < 1e-15);
            assert!((n.hilbert_schmidt - 2f64.sqrt()).abs() < 1e-15);
            assert!((n.trace.unwrap() - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sqrt_of_diagonal() {
        let r = positive_sqrt(&ComplexMatrix::real_diag(&[4.0, 9.0])).unwrap();
        assert!((&r - &ComplexMatrix::real_diag(&[2.0, 3.0])).max_abs() < 1e-14);
        let i = positive_sqrt(&ComplexMatrix::identity(3)).unwrap();
        assert!((&i - &ComplexMatrix::identity(3)).max_abs() < 1e-14);
        assert!(positive_sqrt(&ComplexMatrix::real_diag(&[1.0, -1.0])).is_err());
    }

    #[test]
    fn solve_scaled_identity() {
        let a = ComplexMatrix::scalar(3, C64::new(2.0, 0.0));
        let x = solve(&a, &[C64::new(1.0, 0.0), ZERO, ZERO]).unwrap();
        assert!((x[0] - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(inverse_norm(&a).unwrap().value(), Some(0.5));
    }

    #[test]
    fn nilpotent_shift_is_singular() {
        let j = ComplexMatrix::from_fn(5, 5, |i, k| if i == k + 1 { C64::new(1.0, 0.0) } else { ZERO });
        assert!(inverse_norm(&j).unwrap().is_singular());
        assert!(matches!(solve(&j, &[ZERO; 5]), Err(FsqError::Singular { .. })));
    }
}
