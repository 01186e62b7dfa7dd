use serde::{Deserialize, Serialize};

use super::limits::truncation_spectra;
use crate::error::{domain, Result};
use crate::operators::{Filtration, OperatorModel};

/// Piecewise polynomial on the real line. Piece `k` covers
/// `[breakpoints[k-1], breakpoints[k])`, with the outer pieces unbounded.
/// Coefficients are in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePolynomial {
    #[serde(default)]
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self> {
        let p = Self { breakpoints, pieces };
        p.validate()?;
        Ok(p)
    }

    pub fn polynomial(coefficients: Vec<f64>) -> Self {
        Self {
            breakpoints: Vec::new(),
            pieces: vec![coefficients],
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::polynomial(vec![c])
    }

    /// Indicator of `[a, b)`.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![vec![0.0], vec![1.0], vec![0.0]])
    }

    pub fn validate(&self) -> Result<()> {
        if self.pieces.len() != self.breakpoints.len() + 1 {
            return domain("piecewise polynomial needs one more piece than breakpoints");
        }
        if self.breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return domain("breakpoints must be strictly increasing");
        }
        if self.pieces.iter().flatten().chain(&self.breakpoints).any(|c| !c.is_finite()) {
            return domain("non-finite coefficient");
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.breakpoints.partition_point(|&b| b <= x);
        self.pieces[k].iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SzegoRow {
    pub n: usize,
    pub dim: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SzegoSequence {
    pub rows: Vec<SzegoRow>,
    /// Mean of the last quarter of the sequence.
    pub limit_estimate: f64,
}

/// `s_n = (1/d_n) sum_i f(lambda_i^{(n)})` for `n = 1..=max_n`.
pub fn szego_functional_with(
    model: &OperatorModel,
    filtration: &Filtration,
    f: impl Fn(f64) -> f64,
    max_n: usize,
) -> Result<SzegoSequence> {
    if max_n == 0 {
        return domain("Szego sequence needs N >= 1");
    }
    let ns: Vec<usize> = (1..=max_n).collect();
    let rows: Vec<SzegoRow> = truncation_spectra(model, filtration, &ns)?
        .into_iter()
        .map(|(n, ev)| SzegoRow {
            n,
            dim: ev.len(),
            value: ev.iter().map(|&x| f(x)).sum::<f64>() / ev.len() as f64,
        })
        .collect();
    let quarter = rows.len().div_ceil(4);
    let limit_estimate = rows[rows.len() - quarter..].iter().map(|r| r.value).sum::<f64>() / quarter as f64;
    Ok(SzegoSequence { rows, limit_estimate })
}

pub fn szego_functional(
    model: &OperatorModel,
    filtration: &Filtration,
    f: &PiecewisePolynomial,
    max_n: usize,
) -> Result<SzegoSequence> {
    f.validate()?;
    szego_functional_with(model, filtration, |x| f.eval(x), max_n)
}
