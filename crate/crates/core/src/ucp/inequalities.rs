use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::{check_positive_semidefinite, hermitian_trace_norm, operator_norm, ComplexMatrix, Tolerances};

/// Two sides of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityGap {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

impl InequalityGap {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, gap: rhs - lhs }
    }
}

/// `||a - b||_HS^2 <= ||a^2 - b^2||_1` for positive `a`, `b`.
pub fn powers_stormer_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<InequalityGap> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return domain("Powers-Stormer inputs differ in shape");
    }
    let tol = Tolerances::default();
    check_positive_semidefinite(a, &tol)?;
    check_positive_semidefinite(b, &tol)?;
    let lhs = (a - b).frobenius_norm().powi(2);
    let sq = &a.matmul(a) - &b.matmul(b);
    let rhs = hermitian_trace_norm(&sq.hermitian_part())?;
    Ok(InequalityGap::new(lhs, rhs))
}

fn check_projection(p: &ComplexMatrix, tol: f64) -> Result<()> {
    if !p.is_square() {
        return domain("projection must be square");
    }
    let idem = (&p.matmul(p) - p).max_abs();
    let herm = (p - &p.adjoint()).max_abs();
    if idem > tol || herm > tol {
        return domain(format!("not a projection (||P^2 - P|| = {idem:.3e}, ||P - P*|| = {herm:.3e})"));
    }
    if p.trace().re < 0.5 {
        return domain("projection of rank zero");
    }
    Ok(())
}

/// The compression `phi(x) = P x P` and the bound
/// `||phi(ab) - phi(a)phi(b)||_2 <= ||b|| (tr(phi(aa*) - phi(a)phi(a*)) + tr(phi(a*a) - phi(a*)phi(a)))^{1/2}`,
/// with `tr = Tr / Tr P` on the corner.
pub fn compression_defect(p: &ComplexMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<InequalityGap> {
    check_projection(p, Tolerances::default().projection.max(1e-12 * p.max_abs()))?;
    if a.rows() != p.rows() || b.rows() != p.rows() || !a.is_square() || !b.is_square() {
        return domain("compression inputs differ in shape");
    }
    let rank = p.trace().re.round();
    let phi = |x: &ComplexMatrix| p.matmul(x).matmul(p);
    let tr = |x: &ComplexMatrix| x.trace().re / rank;
    let a_adj = a.adjoint();
    let (pa, pa_adj) = (phi(a), phi(&a_adj));
    let lhs = (&phi(&a.matmul(b)) - &pa.matmul(&phi(b))).frobenius_norm() / rank.sqrt();
    let d1 = tr(&(&phi(&a.matmul(&a_adj)) - &pa.matmul(&pa_adj)));
    let d2 = tr(&(&phi(&a_adj.matmul(a)) - &pa_adj.matmul(&pa)));
    let rhs = operator_norm(b)? * (d1 + d2).max(0.0).sqrt();
    Ok(InequalityGap::new(lhs, rhs))
}
