use serde::{Deserialize, Serialize};

use super::model::{IndexWindow, OperatorModel, Support};
use crate::error::{domain, Result};
use crate::linalg::ComplexMatrix;

/// Coordinate filtration given by strictly increasing window sizes
/// `d_1 < d_2 < ...`.
///
/// On `N` the `n`-th window is `1..=d_n`. On `Z` it is the `d_n` indices
/// starting at `-floor(d_n / 2)`, so consecutive windows nest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Filtration {
    /// `d_n = start + (n - 1) * step`.
    Arithmetic { start: usize, step: usize },
    Explicit { dims: Vec<usize> },
}

impl Filtration {
    /// The canonical coordinate filtration `d_n = n`.
    pub fn coordinate() -> Self {
        Self::Arithmetic { start: 1, step: 1 }
    }

    pub fn explicit(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims[0] == 0 || dims.windows(2).any(|w| w[0] >= w[1]) {
            return domain("filtration dims must be positive and strictly increasing");
        }
        Ok(Self::Explicit { dims })
    }

    pub fn arithmetic(start: usize, step: usize) -> Result<Self> {
        if start == 0 || step == 0 {
            return domain("arithmetic filtration needs start >= 1 and step >= 1");
        }
        Ok(Self::Arithmetic { start, step })
    }

    /// `d_n` for `n >= 1`; `None` past the end of an explicit list.
    pub fn dim(&self, n: usize) -> Option<usize> {
        if n == 0 {
            return None;
        }
        match self {
            Self::Arithmetic { start, step } => Some(start + (n - 1) * step),
            Self::Explicit { dims } => dims.get(n - 1).copied(),
        }
    }

    /// Number of members, if finite.
    pub fn len(&self) -> Option<usize> {
        match self {
            Self::Arithmetic { .. } => None,
            Self::Explicit { dims } => Some(dims.len()),
        }
    }

    /// Always `false`: every filtration has a first member.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn window(&self, support: Support, n: usize) -> Result<IndexWindow> {
        let Some(d) = self.dim(n) else {
            return domain(format!("filtration has no member {n}"));
        };
        Ok(window_for(support, d))
    }
}

/// Coordinate window of size `d` for the given support.
pub fn window_for(support: Support, d: usize) -> IndexWindow {
    match support {
        Support::OneSided => IndexWindow { start: 1, len: d },
        Support::TwoSided => IndexWindow {
            start: -((d / 2) as i64),
            len: d,
        },
    }
}

/// `P_n T P_n` as a `d_n x d_n` matrix together with its index window.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub n: usize,
    pub window: IndexWindow,
    pub matrix: ComplexMatrix,
}

impl Truncation {
    pub fn dim(&self) -> usize {
        self.window.len
    }
}

pub fn truncate(model: &OperatorModel, filtration: &Filtration, n: usize) -> Result<Truncation> {
    let window = filtration.window(model.support, n)?;
    Ok(Truncation {
        n,
        window,
        matrix: model.section(window),
    })
}
