use serde::{Deserialize, Serialize};

use super::maps::{two_norm, CpMap, UcpModel};
use crate::error::{domain, Result};
use crate::linalg::{hermitian_eig, operator_norm, ComplexMatrix};

/// `phi(a) = c psi(a) c` with `c = phi(1)^{1/2}` and `psi` unital.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Unitalization {
    pub c: ComplexMatrix,
    pub psi: UcpModel,
    /// Smallest eigenvalue of `phi(1)`.
    pub unit_floor: f64,
}

/// Requires `floor I <= phi(1) <= I` (up to `1e-10` above).
pub fn unitalize(phi: &CpMap, floor: f64) -> Result<Unitalization> {
    if !(floor > 0.0) {
        return domain("the declared floor for phi(1) must be positive");
    }
    let eig = hermitian_eig(&phi.unit().hermitian_part())?;
    if eig.min() < floor {
        return domain(format!("phi(1) has eigenvalue {:.3e} below the floor {floor:.3e}", eig.min()));
    }
    if eig.max() > 1.0 + 1e-10 {
        return domain(format!("phi is not contractive (||phi(1)|| = {:.6})", eig.max()));
    }
    let c = eig.apply_function(f64::sqrt);
    let c_inv = eig.apply_function(|l| 1.0 / l.sqrt());
    let kraus = phi.kraus.iter().map(|k| k.matmul(&c_inv)).collect();
    Ok(Unitalization {
        c,
        psi: UcpModel::new(CpMap::new(kraus)?, 1e-10)?,
        unit_floor: eig.min(),
    })
}

impl Unitalization {
    /// `||phi(a) - c psi(a) c||`.
    pub fn reconstruction_error(&self, phi: &CpMap, a: &ComplexMatrix) -> Result<f64> {
        let back = self.c.matmul(&self.psi.apply(a)?).matmul(&self.c);
        operator_norm(&(&phi.apply(a)? - &back))
    }

    /// `||x - c x c||_2` against `2 ||x|| ||c - 1||_2`.
    pub fn cutdown_perturbation(&self, x: &ComplexMatrix) -> Result<(f64, f64)> {
        let lhs = two_norm(&(x - &self.c.matmul(x).matmul(&self.c)));
        let one = ComplexMatrix::identity(self.c.rows());
        let rhs = 2.0 * operator_norm(x)? * two_norm(&(&self.c - &one));
        Ok((lhs, rhs))
    }
}

/// Block-diagonal map with `s` summands equal to `phi` (into `M_l`) and one
/// summand equal to `psi` (into `M_k`), into `M_{s l + k}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaddedMap {
    pub map: CpMap,
    pub copies: usize,
    /// Weight `s l / (s l + k)` of the `phi` summands in the normalized trace.
    pub phi_weight: f64,
}

pub fn pad_block_diagonal(phi: &CpMap, psi: &CpMap, s: usize) -> Result<PaddedMap> {
    if s == 0 {
        return domain("at least one copy of phi is required");
    }
    if phi.input_dim != psi.input_dim {
        return domain("maps act on different algebras");
    }
    let (l, k) = (phi.output_dim, psi.output_dim);
    let total = s * l + k;
    let place = |v: &ComplexMatrix, offset: usize| {
        let mut out = ComplexMatrix::zeros(v.rows(), total);
        out.set_block(0, offset, v);
        out
    };
    let mut kraus = Vec::with_capacity(s * phi.kraus.len() + psi.kraus.len());
    for copy in 0..s {
        kraus.extend(phi.kraus.iter().map(|v| place(v, copy * l)));
    }
    kraus.extend(psi.kraus.iter().map(|v| place(v, s * l)));
    Ok(PaddedMap {
        map: CpMap::new(kraus)?,
        copies: s,
        phi_weight: (s * l) as f64 / total as f64,
    })
}
