//! Shared fixtures for the criterion benchmarks under `benches/`.

use fsq_core::operators::{truncate, Filtration, OperatorModel, Support};
use fsq_core::random::{hermitian, trial_rng};
use fsq_core::ComplexMatrix;

/// `P_n S P_n` for the unilateral shift: one Jordan block.
pub fn jordan(n: usize) -> ComplexMatrix {
    truncate(&OperatorModel::unilateral_shift(), &Filtration::coordinate(), n)
        .expect("shift truncates")
        .matrix
}

/// Tridiagonal Toeplitz truncation with zero diagonal and unit off-diagonals.
pub fn laplacian(n: usize) -> ComplexMatrix {
    let m = OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.0, 1.0);
    truncate(&m, &Filtration::coordinate(), n).expect("toeplitz truncates").matrix
}

/// Dense random Hermitian matrix, fixed by `seed`.
pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    hermitian(&mut trial_rng(seed, n as u64), n)
}
