use serde::{Deserialize, Serialize};

use super::limits::truncation_spectra;
use crate::error::{domain, Result};
use crate::operators::{Filtration, OperatorModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssentialOptions {
    /// Half-widths of the intervals `U = (lambda - r, lambda + r)`.
    pub radii: Vec<f64>,
    /// Indices `n` at which `N_n(U)` is counted, ascending.
    pub samples: Vec<usize>,
    /// Required count at the last sample.
    pub min_count: usize,
}

impl EssentialOptions {
    /// Radii `0.1, 0.05, 0.025` and samples `N, N/2, N/4, ...` (at least 1).
    pub fn defaults_for(max_n: usize) -> Self {
        Self {
            radii: vec![0.1, 0.05, 0.025],
            samples: doubling_schedule(max_n),
            min_count: 10,
        }
    }
}

/// `[N/2^k, ..., N/2, N]`, ascending and deduplicated, stopping at 1.
pub fn doubling_schedule(max_n: usize) -> Vec<usize> {
    let mut v = Vec::new();
    let mut n = max_n;
    while n >= 1 && v.len() < 6 {
        v.push(n);
        n /= 2;
    }
    v.reverse();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalCounts {
    pub radius: f64,
    /// `N_n(U)` for each sample, in sample order.
    pub counts: Vec<usize>,
    pub growing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssentialCandidate {
    pub lambda: f64,
    pub intervals: Vec<IntervalCounts>,
    pub essential: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssentialPointReport {
    pub samples: Vec<usize>,
    pub min_count: usize,
    pub candidates: Vec<EssentialCandidate>,
}

impl EssentialPointReport {
    pub fn verdict(&self, lambda: f64) -> Option<bool> {
        self.candidates
            .iter()
            .find(|c| c.lambda == lambda)
            .map(|c| c.essential)
    }
}

/// Counts eigenvalues of the truncations near each candidate. A candidate is
/// essential when, for every radius, the final count reaches `min_count` and
/// the counts over the second half of the schedule never decrease.
pub fn essential_points(
    model: &OperatorModel,
    filtration: &Filtration,
    candidates: &[f64],
    options: &EssentialOptions,
) -> Result<EssentialPointReport> {
    if options.samples.is_empty() || options.radii.is_empty() {
        return domain("essential-point schedule needs samples and radii");
    }
    if options.radii.iter().any(|&r| !(r > 0.0)) {
        return domain("interval radii must be positive");
    }
    if options.samples.windows(2).any(|w| w[0] >= w[1]) {
        return domain("sample indices must be strictly increasing");
    }
    let spectra = truncation_spectra(model, filtration, &options.samples)?;
    let tail_start = options.samples.len() / 2;
    let candidates = candidates
        .iter()
        .map(|&lambda| {
            let intervals: Vec<IntervalCounts> = options
                .radii
                .iter()
                .map(|&radius| {
                    let counts: Vec<usize> = spectra
                        .iter()
                        .map(|(_, ev)| ev.iter().filter(|&&x| (x - lambda).abs() < radius).count())
                        .collect();
                    let growing = counts[tail_start..].windows(2).all(|w| w[0] <= w[1])
                        && *counts.last().expect("nonempty") >= options.min_count;
                    IntervalCounts { radius, counts, growing }
                })
                .collect();
            let essential = intervals.iter().all(|c| c.growing);
            EssentialCandidate { lambda, intervals, essential }
        })
        .collect();
    Ok(EssentialPointReport {
        samples: options.samples.clone(),
        min_count: options.min_count,
        candidates,
    })
}
