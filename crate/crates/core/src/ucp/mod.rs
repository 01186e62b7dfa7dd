//! Matrix-scale completely positive maps and trace constructions:
//! Powers-Stormer, Ozawa's hypertrace model, compression multiplicativity
//! bounds, conditional expectations, trace-preserving embeddings,
//! unitalization and block padding.

mod embedding;
mod expectation;
mod inequalities;
mod maps;
mod ozawa;
mod unital;

pub use embedding::{rational_approximation, trace_preserving_embedding, TraceEmbedding, DENOMINATOR_CAP};
pub use expectation::{conditional_expectation, AmbientTrace, ConditionalExpectation, MatrixUnits, NULL_SUMMAND};
pub use inequalities::{compression_defect, powers_stormer_gap, InequalityGap};
pub use maps::{two_norm, CpMap, UcpModel};
pub use ozawa::{ozawa_model, OzawaDefect, OzawaModel, RationalDensity};
pub use unital::{pad_block_diagonal, unitalize, PaddedMap, Unitalization};

use rand::Rng;

use crate::linalg::ComplexMatrix;
use crate::random::unitary;

/// Compression by a random isometry `C^k -> C^d`, a unital cp map.
pub fn random_compression<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize) -> CpMap {
    let u: ComplexMatrix = unitary(rng, d);
    CpMap::compression(u.block(0, 0, d, k))
}
