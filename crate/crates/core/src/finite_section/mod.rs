//! Finite-section analysis of banded operators: stability of the truncations,
//! section solves, pseudospectra, set limits of spectra, essential points,
//! Szego-type averages and compression traces.

mod compression;
mod essential;
mod limits;
mod pseudospectrum;
mod solve;
mod stability;
mod szego;

pub use compression::{
    compression_trace, compression_trace_sequence, CompressionTraceReport, CompressionTraceRow, Word,
};
pub use essential::{
    doubling_schedule, essential_points, EssentialCandidate, EssentialOptions, EssentialPointReport,
    IntervalCounts,
};
pub use limits::{
    hermitian_set_limits, pseudospectral_set_limits, set_limits, truncation_spectra, LimitPoint,
    SetLimitOptions, SetLimitSummary,
};
pub use pseudospectrum::{pseudospectrum, resolvent_s_min, s_min_sweep, GridSpec, PseudospectrumGrid};
pub use solve::{solve_finite_section, FiniteSectionSolve, Increment, SectionSolution, SparseVector};
pub use stability::{stability_scan, StabilityOptions, StabilityReport, StabilityRow};
pub use szego::{szego_functional, szego_functional_with, PiecewisePolynomial, SzegoRow, SzegoSequence};
