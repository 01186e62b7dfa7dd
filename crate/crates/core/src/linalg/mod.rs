//! Dense complex linear algebra used by every other module.

mod decomp;
mod eigen;
mod matrix;
mod tolerance;

pub use decomp::{
    check_positive_semidefinite, extreme_singular_values, hermitian_operator_norm,
    hermitian_trace_norm, inverse_norm, inverse_norm_with, norms, operator_norm, positive_sqrt,
    positive_sqrt_with, singular_values, smallest_singular_value, solve, trace_norm, InverseNorm,
    Lu, Norms,
};
pub use eigen::{
    hermitian_eig, hermitian_eig_with, hermitian_eigenvalues, hermitian_eigenvalues_with,
    symmetric_tridiagonal_eigenvalues, HermitianEigen,
};
pub use matrix::{vec_norm, ComplexMatrix, C64, ONE, ZERO};
pub use tolerance::Tolerances;
