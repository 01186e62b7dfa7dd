use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::{inverse_norm_with, Tolerances};
use crate::operators::{truncate, Filtration, OperatorModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityOptions {
    /// Inverse norms above this cap count as unbounded.
    pub inverse_norm_cap: f64,
    /// The invertible tail `n0..=N` must cover at least this fraction of
    /// the scan.
    pub min_tail_fraction: f64,
    pub tolerances: Tolerances,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        Self {
            inverse_norm_cap: 1e6,
            min_tail_fraction: 0.5,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub n: usize,
    pub dim: usize,
    pub invertible: bool,
    pub inverse_norm: Option<f64>,
    pub s_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub rows: Vec<StabilityRow>,
    /// First index from which every scanned truncation is invertible.
    pub n0: Option<usize>,
    /// `sup_{n >= n0} ||(P_n T P_n)^{-1}||` over the scan.
    pub sup_inverse_norm: Option<f64>,
    /// Stable up to `N`: invertible tail long enough and bounded by the cap.
    pub stable: bool,
    pub options: StabilityOptions,
}

/// Invertibility and inverse norms of `P_n T P_n` for `n = 1..=max_n`.
pub fn stability_scan(
    model: &OperatorModel,
    filtration: &Filtration,
    max_n: usize,
    options: &StabilityOptions,
) -> Result<StabilityReport> {
    if max_n == 0 {
        return domain("stability scan needs N >= 1");
    }
    let rows = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let t = truncate(model, filtration, n)?;
            let inv = inverse_norm_with(&t.matrix, &options.tolerances)?;
            Ok(StabilityRow {
                n,
                dim: t.dim(),
                invertible: !inv.is_singular(),
                inverse_norm: inv.value(),
                s_min: inv.s_min(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let first_tail = rows
        .iter()
        .rposition(|r| !r.invertible)
        .map_or(0, |last_singular| last_singular + 1);
    let (n0, sup) = if first_tail < rows.len() {
        let sup = rows[first_tail..]
            .iter()
            .filter_map(|r| r.inverse_norm)
            .fold(0.0, f64::max);
        (Some(rows[first_tail].n), Some(sup))
    } else {
        (None, None)
    };
    let tail_len = rows.len() - first_tail;
    let stable = match sup {
        Some(s) => {
            s <= options.inverse_norm_cap
                && tail_len as f64 >= options.min_tail_fraction * rows.len() as f64
        }
        None => false,
    };
    Ok(StabilityReport {
        rows,
        n0,
        sup_inverse_norm: sup,
        stable,
        options: *options,
    })
}
