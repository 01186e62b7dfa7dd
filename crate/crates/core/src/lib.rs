//! Finite-section spectral approximation of banded operators, together with
//! matrix-scale models of traces: compression maps, Ozawa-type hypertrace
//! models, conditional expectations, inductive-limit connecting maps, and
//! congruence quotients of a free subgroup of `SL(2, Z)`.

pub mod error;
pub mod export;
pub mod finite_section;
pub mod groups;
pub mod inductive;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod ucp;
pub mod verify;

pub use error::{FsqError, Result};
pub use linalg::{ComplexMatrix, C64};
