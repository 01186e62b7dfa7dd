use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FsqError, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::operators::{Filtration, OperatorModel};

/// Product of `T` and `T*` letters, read left to right. The empty word (or
/// `"1"`) is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    /// `true` for an adjoint letter.
    pub letters: Vec<bool>,
}

impl Word {
    pub fn identity() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl FromStr for Word {
    type Err = FsqError;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "1" || s == "I" {
            return Ok(Self::identity());
        }
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c != 'T' {
                return Err(FsqError::Parse(format!("unexpected '{c}' in word {s:?}")));
            }
            letters.push(chars.next_if_eq(&'*').is_some());
        }
        Ok(Self { letters })
    }
}

impl TryFrom<String> for Word {
    type Error = FsqError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &adj in &self.letters {
            f.write_str(if adj { "T*" } else { "T" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionTraceRow {
    pub n: usize,
    pub dim: usize,
    /// `phi_n(X)` per word, in word order.
    pub values: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionTraceReport {
    pub words: Vec<Word>,
    pub rows: Vec<CompressionTraceRow>,
    /// `|phi_N(X) - phi_{N-1}(X)|` per word (zero for a single row).
    pub last_increments: Vec<f64>,
}

/// `phi_n(X) = tr_{d_n}(P_n X P_n)` for each word `X`.
///
/// A word of length `L` only couples indices within `L * band`, so the
/// product is formed on the window enlarged by that margin.
pub fn compression_trace(
    model: &OperatorModel,
    filtration: &Filtration,
    n: usize,
    words: &[Word],
) -> Result<Vec<C64>> {
    let window = filtration.window(model.support, n)?;
    let longest = words.iter().map(Word::len).max().unwrap_or(0);
    let ambient = window.enlarge(longest * model.band(), model.min_index());
    let t = model.section(ambient);
    let t_adj = t.adjoint();
    let offset = (window.start - ambient.start) as usize;
    Ok(words
        .iter()
        .map(|w| {
            if w.is_empty() {
                return C64::new(1.0, 0.0);
            }
            let mut x: ComplexMatrix = if w.letters[0] { t_adj.clone() } else { t.clone() };
            for &adj in &w.letters[1..] {
                x = x.matmul(if adj { &t_adj } else { &t });
            }
            (0..window.len).map(|p| x[(offset + p, offset + p)]).sum::<C64>() / window.len as f64
        })
        .collect())
}

pub fn compression_trace_sequence(
    model: &OperatorModel,
    filtration: &Filtration,
    ns: &[usize],
    words: &[Word],
) -> Result<CompressionTraceReport> {
    let rows = ns
        .par_iter()
        .map(|&n| {
            Ok(CompressionTraceRow {
                n,
                dim: filtration.window(model.support, n)?.len,
                values: compression_trace(model, filtration, n, words)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let last_increments = match rows.len() {
        0 | 1 => vec![0.0; words.len()],
        k => rows[k - 1]
            .values
            .iter()
            .zip(&rows[k - 2].values)
            .map(|(a, b)| (a - b).norm())
            .collect(),
    };
    Ok(CompressionTraceReport {
        words: words.to_vec(),
        rows,
        last_increments,
    })
}
