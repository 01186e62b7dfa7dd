//! Quasicentrality defects `||[P_n, T]||` of coordinate filtrations.
//!
//! The commutator is evaluated on the window enlarged by the band on both
//! sides (clipped at the boundary of `N`). Entries of `P T - T P` vanish
//! unless one index lies in the window and the other within `band` of it,
//! so the enlarged section reproduces the infinite commutator exactly.

use serde::{Deserialize, Serialize};

use super::filtration::Filtration;
use super::model::OperatorModel;
use crate::error::{domain, Result};
use crate::linalg::{hermitian_operator_norm, operator_norm, ComplexMatrix, ZERO};

/// Both evaluations of the operator- and Hilbert-Schmidt-norm commutator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorDefect {
    /// `||P a - a P||` computed from the commutator matrix.
    pub opnorm_direct: f64,
    /// `max(||P a a* P - P a P a* P||, ||P a* a P - P a* P a P||)^{1/2}`.
    pub opnorm_identity: f64,
    /// `||P a - a P||_HS / ||P||_HS`.
    pub hs_direct: f64,
    /// `((Tr(P a a* P - P a P a* P) + Tr(P a* a P - P a* P a P)) / Tr P)^{1/2}`.
    pub hs_identity: f64,
}

impl CommutatorDefect {
    pub fn opnorm_mismatch(&self) -> f64 {
        (self.opnorm_direct - self.opnorm_identity).abs()
    }

    pub fn hs_mismatch(&self) -> f64 {
        (self.hs_direct - self.hs_identity).abs()
    }
}

fn mask(p: &[bool], a: &ComplexMatrix, rows: bool, cols: bool) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if (rows && !p[i]) || (cols && !p[j]) {
            ZERO
        } else {
            a[(i, j)]
        }
    })
}

/// Commutator defect of a coordinate projection (given by `in_range`) with
/// a finite matrix `a`.
pub fn coordinate_commutator(in_range: &[bool], a: &ComplexMatrix) -> Result<CommutatorDefect> {
    if !a.is_square() || a.rows() != in_range.len() {
        return domain("projection mask and matrix dimensions differ");
    }
    let rank = in_range.iter().filter(|&&b| b).count();
    if rank == 0 {
        return domain("projection of rank zero");
    }
    let commutator = ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        match (in_range[i], in_range[j]) {
            (true, false) => a[(i, j)],
            (false, true) => -a[(i, j)],
            _ => ZERO,
        }
    });
    let opnorm_direct = operator_norm(&commutator)?;
    let hs_direct = commutator.frobenius_norm() / (rank as f64).sqrt();

    let adj = a.adjoint();
    let pa = mask(in_range, a, true, false);
    let pap = mask(in_range, a, true, true);
    let padj = mask(in_range, &adj, true, false);
    let padjp = mask(in_range, &adj, true, true);
    // P a a* P - P a P a* P
    let x1 = &mask(in_range, &(&pa * &adj), false, true) - &(&pap * &padjp);
    // P a* a P - P a* P a P
    let x2 = &mask(in_range, &(&padj * a), false, true) - &(&padjp * &pap);
    let x1 = x1.hermitian_part();
    let x2 = x2.hermitian_part();
    let opnorm_identity = hermitian_operator_norm(&x1)?
        .max(hermitian_operator_norm(&x2)?)
        .sqrt();
    let tr = x1.trace().re + x2.trace().re;
    let hs_identity = (tr / rank as f64).max(0.0).sqrt();
    Ok(CommutatorDefect {
        opnorm_direct,
        opnorm_identity,
        hs_direct,
        hs_identity,
    })
}

/// Defects of `P_n` against the model, where `P_n` is the `n`-th window of
/// the filtration.
pub fn commutator_defect(
    model: &OperatorModel,
    filtration: &Filtration,
    n: usize,
) -> Result<CommutatorDefect> {
    let window = filtration.window(model.support, n)?;
    let band = model.band();
    if band > window.len {
        return domain(format!("band {band} exceeds the window size {}", window.len));
    }
    let ambient = window.enlarge(band, model.min_index());
    let section = model.section(ambient);
    let in_range: Vec<bool> = (0..ambient.len)
        .map(|p| window.contains(ambient.start + p as i64))
        .collect();
    coordinate_commutator(&in_range, &section)
}

/// `||P_n T - T P_n||`, from the commutator matrix.
pub fn commutator_defect_opnorm(model: &OperatorModel, filtration: &Filtration, n: usize) -> Result<f64> {
    Ok(commutator_defect(model, filtration, n)?.opnorm_direct)
}

/// Connes-Folner defect `||P_n T - T P_n||_HS / ||P_n||_HS`.
pub fn commutator_defect_hs(model: &OperatorModel, filtration: &Filtration, n: usize) -> Result<f64> {
    Ok(commutator_defect(model, filtration, n)?.hs_direct)
}
