use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::{smallest_singular_value, ComplexMatrix, C64};

/// Rectangular lattice `re_min + k re_step`, `im_min + l im_step` with both
/// ranges inclusive of their upper ends (up to a rounding guard).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub re_step: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub im_step: f64,
}

fn axis_count(min: f64, max: f64, step: f64) -> usize {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) || step <= 0.0 || max < min {
        return 0;
    }
    ((max - min) / step + 1e-9).floor() as usize + 1
}

impl GridSpec {
    /// Square grid centred at `center` with half-width `radius`.
    pub fn square(center: C64, radius: f64, step: f64) -> Self {
        Self {
            re_min: center.re - radius,
            re_max: center.re + radius,
            re_step: step,
            im_min: center.im - radius,
            im_max: center.im + radius,
            im_step: step,
        }
    }

    pub fn re_count(&self) -> usize {
        axis_count(self.re_min, self.re_max, self.re_step)
    }

    pub fn im_count(&self) -> usize {
        axis_count(self.im_min, self.im_max, self.im_step)
    }

    pub fn len(&self) -> usize {
        self.re_count() * self.im_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Lattice point `idx`, imaginary-major so that rows of constant `im`
    /// are contiguous.
    pub fn point(&self, idx: usize) -> C64 {
        let nr = self.re_count();
        let (l, k) = (idx / nr, idx % nr);
        C64::new(
            self.re_min + k as f64 * self.re_step,
            self.im_min + l as f64 * self.im_step,
        )
    }

    pub fn points(&self) -> Vec<C64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudospectrumGrid {
    pub epsilon: f64,
    pub grid: GridSpec,
    /// `s_min(lambda I - A)` per lattice point.
    pub s_min: Vec<f64>,
    pub membership: Vec<bool>,
}

impl PseudospectrumGrid {
    /// Re-threshold the stored sweep at another epsilon.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(Self {
            epsilon,
            grid: self.grid,
            membership: self.s_min.iter().map(|&s| s <= epsilon).collect(),
            s_min: self.s_min.clone(),
        })
    }

    pub fn point(&self, idx: usize) -> C64 {
        self.grid.point(idx)
    }

    pub fn members(&self) -> Vec<C64> {
        self.membership
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.grid.point(i))
            .collect()
    }

    pub fn member_count(&self) -> usize {
        self.membership.iter().filter(|&&m| m).count()
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return domain(format!("epsilon must be positive, got {epsilon}"));
    }
    Ok(())
}

/// `s_min(lambda I - A)` at a single point.
pub fn resolvent_s_min(a: &ComplexMatrix, lambda: C64) -> Result<f64> {
    let mut shifted = -a;
    for i in 0..a.rows().min(a.cols()) {
        shifted[(i, i)] += lambda;
    }
    smallest_singular_value(&shifted)
}

/// One sweep of `s_min(lambda I - A)` over the lattice, in lattice order.
pub fn s_min_sweep(a: &ComplexMatrix, grid: &GridSpec) -> Result<Vec<f64>> {
    if !a.is_square() {
        return domain("pseudospectrum of a non-square matrix");
    }
    if grid.is_empty() {
        return domain("empty pseudospectrum grid");
    }
    (0..grid.len())
        .into_par_iter()
        .map(|i| resolvent_s_min(a, grid.point(i)))
        .collect()
}

pub fn pseudospectrum(a: &ComplexMatrix, epsilon: f64, grid: &GridSpec) -> Result<PseudospectrumGrid> {
    check_epsilon(epsilon)?;
    let s_min = s_min_sweep(a, grid)?;
    Ok(PseudospectrumGrid {
        epsilon,
        grid: *grid,
        membership: s_min.iter().map(|&s| s <= epsilon).collect(),
        s_min,
    })
}
