//! Banded infinite operators given by entry rules.
//!
//! One-sided operators act on `l^2(N)` with basis `e_1, e_2, ...`; indices
//! passed to entry rules start at 1. Two-sided operators act on `l^2(Z)`.
//!
//! Model files are JSON documents mirroring [`OperatorModel`]:
//!
//! ```json
//! { "support": "one_sided",
//!   "kind": { "type": "toeplitz", "coefficients": [ { "offset": 1, "re": 1.0 } ] },
//!   "band": 1, "entry_bound": 1.0 }
//! ```
//!
//! `band` and `entry_bound` may be omitted; they are then derived from the
//! entry rule.

use serde::{Deserialize, Serialize};

use crate::error::{domain, FsqError, Result};
use crate::linalg::{ComplexMatrix, C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    OneSided,
    TwoSided,
}

/// Toeplitz coefficient `a_offset`; the entry `t(i, j)` equals `a_{i-j}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub offset: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl Coefficient {
    pub fn real(offset: i64, re: f64) -> Self {
        Self { offset, re, im: 0.0 }
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

/// Real index sequence `k -> d_k` used for diagonals and shift weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum SequenceRule {
    Constant { value: f64 },
    /// `values[(k - 1) mod len]`; `[0, 1]` gives `0, 1, 0, 1, ...` on `N`.
    Periodic { values: Vec<f64> },
    /// `scale * (1 + 1/k)` for `k >= 1` (one-sided use).
    OnePlusInverse {
        #[serde(default = "one")]
        scale: f64,
    },
    /// `value`, except `0` whenever `k` is a multiple of `period`.
    ZeroEvery { period: i64, value: f64 },
    /// Tabulated values for `k = start, start + 1, ...`, then `tail`.
    Tabulated {
        values: Vec<f64>,
        #[serde(default = "one_i64")]
        start: i64,
        #[serde(default)]
        tail: f64,
    },
}

fn one() -> f64 {
    1.0
}

fn one_i64() -> i64 {
    1
}

impl SequenceRule {
    pub fn at(&self, k: i64) -> f64 {
        match self {
            Self::Constant { value } => *value,
            Self::Periodic { values } => {
                if values.is_empty() {
                    0.0
                } else {
                    values[(k - 1).rem_euclid(values.len() as i64) as usize]
                }
            }
            Self::OnePlusInverse { scale } => {
                if k == 0 {
                    *scale
                } else {
                    scale * (1.0 + 1.0 / k as f64)
                }
            }
            Self::ZeroEvery { period, value } => {
                if *period != 0 && k.rem_euclid(*period) == 0 {
                    0.0
                } else {
                    *value
                }
            }
            Self::Tabulated { values, start, tail } => {
                let pos = k - start;
                if pos >= 0 && (pos as usize) < values.len() {
                    values[pos as usize]
                } else {
                    *tail
                }
            }
        }
    }

    /// Upper bound on `|d_k|` over all `k`.
    pub fn sup_abs(&self) -> f64 {
        match self {
            Self::Constant { value } => value.abs(),
            Self::Periodic { values } => values.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
            Self::OnePlusInverse { scale } => 2.0 * scale.abs(),
            Self::ZeroEvery { value, .. } => value.abs(),
            Self::Tabulated { values, tail, .. } => {
                values.iter().fold(tail.abs(), |m: f64, v| m.max(v.abs()))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = match self {
            Self::Constant { value } | Self::ZeroEvery { value, .. } => value.is_finite(),
            Self::Periodic { values } => !values.is_empty() && values.iter().all(|v| v.is_finite()),
            Self::OnePlusInverse { scale } => scale.is_finite(),
            Self::Tabulated { values, tail, .. } => {
                tail.is_finite() && values.iter().all(|v| v.is_finite())
            }
        };
        if finite {
            Ok(())
        } else {
            domain("sequence rule has empty or non-finite values")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftDirection {
    /// `T e_k = w_k e_{k+1}`.
    Forward,
    /// `T e_{k+1} = w_k e_k`.
    Backward,
}

/// Finite complex block `rows x rows`, given as rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        let [re, im] = self.rows[i][j];
        C64::new(re, im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelKind {
    Toeplitz { coefficients: Vec<Coefficient> },
    WeightedShift { weights: SequenceRule, direction: ShiftDirection },
    Diagonal { diagonal: SequenceRule },
    /// Block-diagonal operator cycling through `blocks` along the index set
    /// (the first block starts at index 1, or at 0 on `Z`).
    DirectSum { blocks: Vec<Block> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorModel {
    pub support: Support,
    pub kind: ModelKind,
    #[serde(default)]
    pub band: Option<usize>,
    #[serde(default)]
    pub entry_bound: Option<f64>,
}

impl OperatorModel {
    /// Validates the rule and fills in `band` / `entry_bound` when absent.
    pub fn new(support: Support, kind: ModelKind) -> Result<Self> {
        Self {
            support,
            kind,
            band: None,
            entry_bound: None,
        }
        .validated()
    }

    pub fn validated(mut self) -> Result<Self> {
        let natural = self.natural_band()?;
        match self.band {
            None => self.band = Some(natural),
            Some(b) if b < natural => {
                return domain(format!("declared band {b} is below the rule's band {natural}"))
            }
            Some(_) => {}
        }
        let bound = self.natural_entry_bound();
        match self.entry_bound {
            None => self.entry_bound = Some(bound),
            Some(e) if !(e >= bound * (1.0 - 1e-12)) => {
                return domain(format!("declared entry_bound {e} is below sup|t(i,j)| = {bound}"))
            }
            Some(_) => {}
        }
        Ok(self)
    }

    pub fn toeplitz(support: Support, coefficients: Vec<Coefficient>) -> Result<Self> {
        Self::new(support, ModelKind::Toeplitz { coefficients })
    }

    /// Unilateral shift `e_k -> e_{k+1}` on `l^2(N)`.
    pub fn unilateral_shift() -> Self {
        Self::toeplitz(Support::OneSided, vec![Coefficient::real(1, 1.0)]).expect("valid preset")
    }

    /// Bilateral shift `e_k -> e_{k+1}` on `l^2(Z)`.
    pub fn bilateral_shift() -> Self {
        Self::toeplitz(Support::TwoSided, vec![Coefficient::real(1, 1.0)]).expect("valid preset")
    }

    /// Real symmetric tridiagonal Toeplitz operator with diagonal `a0` and
    /// off-diagonals `a1`.
    pub fn tridiagonal_toeplitz(support: Support, a0: f64, a1: f64) -> Self {
        Self::toeplitz(
            support,
            vec![
                Coefficient::real(-1, a1),
                Coefficient::real(0, a0),
                Coefficient::real(1, a1),
            ],
        )
        .expect("valid preset")
    }

    pub fn diagonal(support: Support, diagonal: SequenceRule) -> Result<Self> {
        Self::new(support, ModelKind::Diagonal { diagonal })
    }

    /// `value * I` on `l^2(N)`.
    pub fn scalar(value: f64) -> Self {
        Self::diagonal(Support::OneSided, SequenceRule::Constant { value }).expect("valid preset")
    }

    pub fn weighted_shift(
        support: Support,
        weights: SequenceRule,
        direction: ShiftDirection,
    ) -> Result<Self> {
        Self::new(support, ModelKind::WeightedShift { weights, direction })
    }

    pub fn direct_sum(support: Support, blocks: &[ComplexMatrix]) -> Result<Self> {
        Self::new(
            support,
            ModelKind::DirectSum {
                blocks: blocks.iter().map(Block::from_matrix).collect(),
            },
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Self = serde_json::from_str(text).map_err(|e| FsqError::Parse(e.to_string()))?;
        raw.validated()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    fn natural_band(&self) -> Result<usize> {
        match &self.kind {
            ModelKind::Toeplitz { coefficients } => {
                if coefficients.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                    return domain("non-finite Toeplitz coefficient");
                }
                Ok(coefficients
                    .iter()
                    .filter(|c| c.value() != ZERO)
                    .map(|c| c.offset.unsigned_abs() as usize)
                    .max()
                    .unwrap_or(0))
            }
            ModelKind::WeightedShift { weights, .. } => {
                weights.validate()?;
                Ok(1)
            }
            ModelKind::Diagonal { diagonal } => {
                diagonal.validate()?;
                Ok(0)
            }
            ModelKind::DirectSum { blocks } => {
                if blocks.is_empty() || blocks.iter().any(|b| b.size() == 0) {
                    return domain("direct sum needs non-empty blocks");
                }
                for b in blocks {
                    if b.rows.iter().any(|r| r.len() != b.size()) {
                        return domain("direct-sum blocks must be square");
                    }
                    if b.rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
                        return domain("non-finite block entry");
                    }
                }
                Ok(blocks.iter().map(|b| b.size() - 1).max().unwrap_or(0))
            }
        }
    }

    fn natural_entry_bound(&self) -> f64 {
        match &self.kind {
            ModelKind::Toeplitz { coefficients } => {
                // repeated offsets add up
                let mut offs: Vec<i64> = coefficients.iter().map(|c| c.offset).collect();
                offs.sort_unstable();
                offs.dedup();
                offs.iter()
                    .map(|&o| self.toeplitz_coefficient(o).norm())
                    .fold(0.0, f64::max)
            }
            ModelKind::WeightedShift { weights, .. } => weights.sup_abs(),
            ModelKind::Diagonal { diagonal } => diagonal.sup_abs(),
            ModelKind::DirectSum { blocks } => blocks
                .iter()
                .flat_map(|b| b.rows.iter().flatten())
                .map(|[re, im]| re.hypot(*im))
                .fold(0.0, f64::max),
        }
    }

    fn toeplitz_coefficient(&self, offset: i64) -> C64 {
        match &self.kind {
            ModelKind::Toeplitz { coefficients } => coefficients
                .iter()
                .filter(|c| c.offset == offset)
                .map(Coefficient::value)
                .sum(),
            _ => ZERO,
        }
    }

    pub fn band(&self) -> usize {
        self.band.unwrap_or_else(|| self.natural_band().unwrap_or(0))
    }

    pub fn entry_bound(&self) -> f64 {
        self.entry_bound.unwrap_or_else(|| self.natural_entry_bound())
    }

    /// First valid index: 1 on `N`, unbounded on `Z`.
    pub fn min_index(&self) -> Option<i64> {
        match self.support {
            Support::OneSided => Some(1),
            Support::TwoSided => None,
        }
    }

    /// Matrix entry `t(i, j) = <T e_j, e_i>`.
    pub fn entry(&self, i: i64, j: i64) -> C64 {
        if let Some(lo) = self.min_index() {
            if i < lo || j < lo {
                return ZERO;
            }
        }
        match &self.kind {
            ModelKind::Toeplitz { .. } => self.toeplitz_coefficient(i - j),
            ModelKind::WeightedShift { weights, direction } => match direction {
                ShiftDirection::Forward if i == j + 1 => C64::new(weights.at(j), 0.0),
                ShiftDirection::Backward if j == i + 1 => C64::new(weights.at(i), 0.0),
                _ => ZERO,
            },
            ModelKind::Diagonal { diagonal } => {
                if i == j {
                    C64::new(diagonal.at(i), 0.0)
                } else {
                    ZERO
                }
            }
            ModelKind::DirectSum { blocks } => {
                let origin = self.min_index().unwrap_or(0);
                match (
                    block_position(blocks, i - origin),
                    block_position(blocks, j - origin),
                ) {
                    (Some((ri, si, id)), Some((rj, sj, _))) if si == sj => {
                        blocks[id].entry(ri, rj)
                    }
                    _ => ZERO,
                }
            }
        }
    }

    /// Whether every entry rule value is real-symmetric or Hermitian.
    pub fn is_hermitian(&self) -> bool {
        match &self.kind {
            ModelKind::Toeplitz { coefficients } => coefficients.iter().all(|c| {
                (self.toeplitz_coefficient(c.offset) - self.toeplitz_coefficient(-c.offset).conj())
                    .norm()
                    <= 1e-14
            }),
            ModelKind::WeightedShift { .. } => false,
            ModelKind::Diagonal { .. } => true,
            ModelKind::DirectSum { blocks } => blocks.iter().all(|b| {
                (0..b.size()).all(|i| {
                    (0..b.size()).all(|j| (b.entry(i, j) - b.entry(j, i).conj()).norm() <= 1e-14)
                })
            }),
        }
    }

    /// Dense section of the operator on `window`.
    pub fn section(&self, window: IndexWindow) -> ComplexMatrix {
        let d = window.len;
        ComplexMatrix::from_fn(d, d, |r, c| {
            self.entry(window.start + r as i64, window.start + c as i64)
        })
    }
}

/// Locates a shifted index `p` (0 = first index) within the repeated
/// block pattern: `(local row, block start, block id)`.
fn block_position(blocks: &[Block], p: i64) -> Option<(usize, i64, usize)> {
    let period: i64 = blocks.iter().map(|b| b.size() as i64).sum();
    let cycle = p.div_euclid(period);
    let mut r = p.rem_euclid(period);
    let mut start = cycle * period;
    for (id, b) in blocks.iter().enumerate() {
        let s = b.size() as i64;
        if r < s {
            return Some((r as usize, start, id));
        }
        r -= s;
        start += s;
    }
    None
}

/// Contiguous index window `start, start + 1, ..., start + len - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexWindow {
    pub start: i64,
    pub len: usize,
}

impl IndexWindow {
    pub fn end(&self) -> i64 {
        self.start + self.len as i64
    }

    pub fn contains(&self, k: i64) -> bool {
        k >= self.start && k < self.end()
    }

    /// Position of index `k` inside the window.
    pub fn position(&self, k: i64) -> Option<usize> {
        self.contains(k).then(|| (k - self.start) as usize)
    }

    /// Enlarges by `margin` on both sides, clipped at `min_index`.
    pub fn enlarge(&self, margin: usize, min_index: Option<i64>) -> Self {
        let mut start = self.start - margin as i64;
        if let Some(lo) = min_index {
            start = start.max(lo);
        }
        let end = self.end() + margin as i64;
        Self {
            start,
            len: (end - start) as usize,
        }
    }
}
