use rand::Rng;
use serde::{Deserialize, Serialize};

use super::maps::{CpMap, UcpModel};
use crate::error::{domain, Result};
use crate::linalg::{hermitian_trace_norm, ComplexMatrix, Tolerances, C64, ZERO};
use crate::random::{composition, unitary};

/// Finite-rank density `h = sum_i (p_i / q) v_i v_i*` with integer weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalDensity {
    pub q: u64,
    pub numerators: Vec<u64>,
    /// `d x k`, orthonormal columns `v_i`.
    pub eigenvectors: ComplexMatrix,
}

impl RationalDensity {
    pub fn new(q: u64, numerators: Vec<u64>, eigenvectors: ComplexMatrix) -> Result<Self> {
        Self::new_with(q, numerators, eigenvectors, &Tolerances::default())
    }

    pub fn new_with(q: u64, numerators: Vec<u64>, eigenvectors: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if numerators.is_empty() || numerators.contains(&0) {
            return domain("density weights must be positive");
        }
        if numerators.iter().sum::<u64>() != q {
            return domain("density numerators must sum to q");
        }
        if eigenvectors.cols() != numerators.len() || eigenvectors.rows() < numerators.len() {
            return domain("need one eigenvector per weight in dimension >= rank");
        }
        let gram = &eigenvectors.adjoint().matmul(&eigenvectors) - &ComplexMatrix::identity(numerators.len());
        if gram.max_abs() > tol.orthonormal {
            return domain(format!("eigenvectors are not orthonormal (defect {:.3e})", gram.max_abs()));
        }
        Ok(Self {
            q,
            numerators,
            eigenvectors,
        })
    }

    /// Density with uniform weights `p_i = q / k` on the standard basis.
    pub fn standard(ambient: usize, numerators: Vec<u64>) -> Result<Self> {
        let q = numerators.iter().sum();
        let k = numerators.len();
        let v = ComplexMatrix::from_fn(ambient, k, |i, j| if i == j { C64::new(1.0, 0.0) } else { ZERO });
        Self::new(q, numerators, v)
    }

    /// Random density of rank `k <= d` with weights summing to `q >= k`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize, q: u64) -> Self {
        let u = unitary(rng, d);
        Self::new(q, composition(rng, q, k), u.block(0, 0, d, k)).expect("random density is valid")
    }

    pub fn ambient_dim(&self) -> usize {
        self.eigenvectors.rows()
    }

    pub fn rank(&self) -> usize {
        self.numerators.len()
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.numerators[i] as f64 / self.q as f64
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let d = self.ambient_dim();
        let mut h = ComplexMatrix::zeros(d, d);
        for i in 0..self.rank() {
            let v = self.eigenvectors.column(i);
            h = &h + &ComplexMatrix::outer(&v, &v).scale_real(self.eigenvalue(i));
        }
        h
    }
}

/// The map `phi(T) = P (T (x) 1) P` onto `span{v_i (x) w_j : j < p_i}`,
/// written in that basis.
///
/// The `w` basis only needs `max p_i` vectors, so `phi` is represented by
/// Kraus operators `V_m` (one per `w_m`) whose columns are `v_i` at the
/// positions of the pairs `(i, m)` and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OzawaModel {
    pub density: RationalDensity,
    pub ucp: UcpModel,
    /// `(i, j)` for each target basis vector, in order.
    pub labels: Vec<(usize, usize)>,
}

pub fn ozawa_model(h: &RationalDensity) -> Result<OzawaModel> {
    let d = h.ambient_dim();
    let q = usize::try_from(h.q).map_err(|_| crate::FsqError::Resource("q too large".into()))?;
    let labels: Vec<(usize, usize)> = h
        .numerators
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
        .collect();
    let width = *h.numerators.iter().max().expect("nonempty") as usize;
    let kraus = (0..width)
        .map(|m| {
            let mut v = ComplexMatrix::zeros(d, q);
            for (pos, &(i, j)) in labels.iter().enumerate() {
                if j == m {
                    v.set_column(pos, &h.eigenvectors.column(i));
                }
            }
            v
        })
        .collect();
    let ucp = UcpModel::new(CpMap::new(kraus)?, 1e-10)?;
    Ok(OzawaModel {
        density: h.clone(),
        ucp,
        labels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OzawaDefect {
    /// `|tr_q(phi(u u*) - phi(u) phi(u*))|`.
    pub lhs: f64,
    /// `2 ||u h u* - h||_1^{1/2}`.
    pub rhs: f64,
}

impl OzawaDefect {
    pub fn gap(&self) -> f64 {
        self.rhs - self.lhs
    }
}

impl OzawaModel {
    /// `tr_q(phi(T))` and `Tr(h T)`.
    pub fn trace_pair(&self, t: &ComplexMatrix) -> Result<(C64, C64)> {
        Ok((self.ucp.trace_of(t)?, self.density.matrix().trace_of_product(t)))
    }

    pub fn defect(&self, u: &ComplexMatrix) -> Result<OzawaDefect> {
        let h = self.density.matrix();
        let moved = &u.matmul(&h).matmul(&u.adjoint()) - &h;
        Ok(OzawaDefect {
            lhs: self.ucp.trace_defect(u)?.norm(),
            rhs: 2.0 * hermitian_trace_norm(&moved.hermitian_part())?.sqrt(),
        })
    }
}
