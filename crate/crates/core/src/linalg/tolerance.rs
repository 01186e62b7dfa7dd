use serde::{Deserialize, Serialize};

/// Tolerance constants shared by the linear-algebra substrate.
///
/// Every operation has a `*_with` variant taking an explicit record; the
/// plain variants use [`Tolerances::default`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative asymmetry accepted by Hermitian-only routines.
    pub hermitian_rel: f64,
    /// Relative negativity accepted for positive semidefinite inputs.
    pub psd_rel: f64,
    /// `s_min <= singular_rel * ||A||` is reported as singular.
    pub singular_rel: f64,
    /// Residual for projection checks (`P^2 = P = P*`).
    pub projection: f64,
    /// Orthonormality residual for supplied eigenvector frames.
    pub orthonormal: f64,
    /// Maximum QL sweeps per eigenvalue.
    pub max_ql_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_rel: 1e-12,
            psd_rel: 1e-12,
            singular_rel: 1e-12,
            projection: 1e-12,
            orthonormal: 1e-12,
            max_ql_iterations: 64,
        }
    }
}
