//! Finite-sample surrogates for `liminf` and `limsup` of a sequence of
//! finite point sets.
//!
//! Candidates are collected from the tail of the sample, latest set first,
//! and merged when closer than `delta`. A candidate is counted as hit by a
//! set `X_n` when some point of `X_n` lies within `delta` of it. The share of
//! tail sets hitting a candidate decides its classification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pseudospectrum::{pseudospectrum, GridSpec};
use crate::error::{domain, Result};
use crate::linalg::{hermitian_eigenvalues_with, Tolerances, C64};
use crate::operators::{truncate, Filtration, OperatorModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetLimitOptions {
    pub delta: f64,
    /// Trailing fraction of the sample treated as the tail.
    pub tail_fraction: f64,
    pub limsup_threshold: f64,
    pub liminf_threshold: f64,
}

impl Default for SetLimitOptions {
    fn default() -> Self {
        Self {
            delta: 1e-2,
            tail_fraction: 0.5,
            limsup_threshold: 0.2,
            liminf_threshold: 0.95,
        }
    }
}

impl SetLimitOptions {
    fn validate(&self) -> Result<()> {
        let unit = |x: f64| x > 0.0 && x <= 1.0;
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return domain("match tolerance delta must be positive");
        }
        if !unit(self.tail_fraction) || !unit(self.limsup_threshold) || !unit(self.liminf_threshold) {
            return domain("tail fraction and thresholds must lie in (0, 1]");
        }
        if self.liminf_threshold < self.limsup_threshold {
            return domain("liminf threshold below limsup threshold");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitPoint {
    pub re: f64,
    pub im: f64,
    /// Share of tail sets with a point within `delta`.
    pub hit_fraction: f64,
}

impl LimitPoint {
    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetLimitSummary {
    /// Sample labels `n`, in order.
    pub samples: Vec<usize>,
    /// Position in `samples` where the tail starts.
    pub tail_start: usize,
    pub liminf: Vec<LimitPoint>,
    pub limsup: Vec<LimitPoint>,
    pub options: SetLimitOptions,
    pub note: String,
}

impl SetLimitSummary {
    fn near(points: &[LimitPoint], z: C64, tol: f64) -> bool {
        points.iter().any(|p| (p.value() - z).norm() <= tol)
    }

    pub fn limsup_contains(&self, z: C64, tol: f64) -> bool {
        Self::near(&self.limsup, z, tol)
    }

    pub fn liminf_contains(&self, z: C64, tol: f64) -> bool {
        Self::near(&self.liminf, z, tol)
    }
}

/// Points of one set sorted by real part, for range queries.
struct SortedSet(Vec<C64>);

impl SortedSet {
    fn new(points: &[C64]) -> Self {
        let mut v = points.to_vec();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self(v)
    }

    fn hits(&self, z: C64, delta: f64) -> bool {
        let lo = self.0.partition_point(|p| p.re < z.re - delta);
        self.0[lo..]
            .iter()
            .take_while(|p| p.re <= z.re + delta)
            .any(|p| (p - z).norm() <= delta)
    }
}

/// Classifies cluster points of `sets`, given as `(n, X_n)` in sample order.
pub fn set_limits(sets: &[(usize, Vec<C64>)], options: &SetLimitOptions) -> Result<SetLimitSummary> {
    options.validate()?;
    if sets.is_empty() {
        return domain("set limits need at least one sample");
    }
    let tail_len = ((sets.len() as f64 * options.tail_fraction).ceil() as usize).clamp(1, sets.len());
    let tail_start = sets.len() - tail_len;
    let tail: Vec<SortedSet> = sets[tail_start..].iter().map(|(_, x)| SortedSet::new(x)).collect();

    let mut candidates: Vec<C64> = Vec::new();
    let mut index = SortedSet(Vec::new());
    for set in tail.iter().rev() {
        for &z in &set.0 {
            if !index.hits(z, options.delta) {
                candidates.push(z);
                let pos = index.0.partition_point(|p| p.re < z.re);
                index.0.insert(pos, z);
            }
        }
    }

    let classified: Vec<LimitPoint> = candidates
        .par_iter()
        .map(|&z| {
            let hits = tail.iter().filter(|s| s.hits(z, options.delta)).count();
            LimitPoint {
                re: z.re,
                im: z.im,
                hit_fraction: hits as f64 / tail_len as f64,
            }
        })
        .collect();
    let mut limsup: Vec<LimitPoint> = classified
        .into_iter()
        .filter(|p| p.hit_fraction >= options.limsup_threshold)
        .collect();
    limsup.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let liminf = limsup
        .iter()
        .copied()
        .filter(|p| p.hit_fraction >= options.liminf_threshold)
        .collect();
    Ok(SetLimitSummary {
        samples: sets.iter().map(|(n, _)| *n).collect(),
        tail_start,
        liminf,
        limsup,
        options: *options,
        note: String::new(),
    })
}

/// Eigenvalues of the Hermitian truncations for each `n` in `ns`.
pub fn truncation_spectra(
    model: &OperatorModel,
    filtration: &Filtration,
    ns: &[usize],
) -> Result<Vec<(usize, Vec<f64>)>> {
    let tol = Tolerances::default();
    ns.par_iter()
        .map(|&n| {
            let t = truncate(model, filtration, n)?;
            Ok((n, hermitian_eigenvalues_with(&t.matrix, &tol)?))
        })
        .collect()
}

/// Set limits of `sigma(P_n T P_n)` over `n = 1..=max_n`.
pub fn hermitian_set_limits(
    model: &OperatorModel,
    filtration: &Filtration,
    max_n: usize,
    options: &SetLimitOptions,
) -> Result<SetLimitSummary> {
    let ns: Vec<usize> = (1..=max_n).collect();
    let sets: Vec<(usize, Vec<C64>)> = truncation_spectra(model, filtration, &ns)?
        .into_iter()
        .map(|(n, ev)| (n, ev.into_iter().map(|x| C64::new(x, 0.0)).collect()))
        .collect();
    set_limits(&sets, options)
}

/// Set limits of the lattice epsilon-pseudospectra of `P_n T P_n`.
pub fn pseudospectral_set_limits(
    model: &OperatorModel,
    filtration: &Filtration,
    ns: &[usize],
    epsilon: f64,
    grid: &GridSpec,
    options: &SetLimitOptions,
) -> Result<SetLimitSummary> {
    let sets = ns
        .iter()
        .map(|&n| {
            let t = truncate(model, filtration, n)?;
            Ok((n, pseudospectrum(&t.matrix, epsilon, grid)?.members()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = set_limits(&sets, options)?;
    summary.note = "finite-n lattice containments only; the quotient pseudospectrum is not computed".into();
    Ok(summary)
}
