use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, FsqError, Result};
use crate::linalg::{vec_norm, Lu, C64, ZERO};
use crate::operators::{truncate, Filtration, IndexWindow, OperatorModel};

/// Finitely supported coefficient vector, keyed by basis index.
pub type SparseVector = BTreeMap<i64, C64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSolution {
    pub n: usize,
    pub window: IndexWindow,
    /// `w_n` in window order.
    pub values: Vec<C64>,
    /// `||P_n T P_n w_n - P_n v||`.
    pub residual: f64,
}

impl SectionSolution {
    pub fn get(&self, index: i64) -> C64 {
        self.window.position(index).map_or(ZERO, |p| self.values[p])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Increment {
    pub from: usize,
    pub to: usize,
    /// `||w_to - w_from||` with both vectors zero-padded to a common window.
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSectionSolve {
    pub solutions: Vec<SectionSolution>,
    pub increments: Vec<Increment>,
    /// Indices whose truncation was singular.
    pub singular: Vec<usize>,
}

impl FiniteSectionSolve {
    pub fn last(&self) -> &SectionSolution {
        self.solutions.last().expect("at least one solution")
    }
}

fn padded_distance(a: &SectionSolution, b: &SectionSolution) -> f64 {
    let start = a.window.start.min(b.window.start);
    let end = a.window.end().max(b.window.end());
    (start..end)
        .map(|k| (a.get(k) - b.get(k)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Solves `(P_n T P_n) w_n = P_n v` for `n = 1..=max_n`.
pub fn solve_finite_section(
    model: &OperatorModel,
    filtration: &Filtration,
    rhs: &SparseVector,
    max_n: usize,
) -> Result<FiniteSectionSolve> {
    let last_window = filtration.window(model.support, max_n)?;
    if let Some(k) = rhs.keys().find(|&&k| !last_window.contains(k)) {
        return domain(format!("rhs index {k} lies outside the largest window"));
    }
    let mut solutions = Vec::new();
    let mut singular = Vec::new();
    for n in 1..=max_n {
        let t = truncate(model, filtration, n)?;
        let b: Vec<C64> = (0..t.dim())
            .map(|p| rhs.get(&(t.window.start + p as i64)).copied().unwrap_or(ZERO))
            .collect();
        match Lu::factor(&t.matrix) {
            Ok(lu) => {
                let w = lu.solve(&b);
                let r: Vec<C64> = t.matrix.matvec(&w).iter().zip(&b).map(|(x, y)| x - y).collect();
                solutions.push(SectionSolution {
                    n,
                    window: t.window,
                    values: w,
                    residual: vec_norm(&r),
                });
            }
            Err(FsqError::Singular { .. }) => singular.push(n),
            Err(e) => return Err(e),
        }
    }
    if solutions.is_empty() {
        return Err(FsqError::NoSolution(max_n));
    }
    let increments = solutions
        .windows(2)
        .map(|p| Increment {
            from: p[0].n,
            to: p[1].n,
            norm: padded_distance(&p[0], &p[1]),
        })
        .collect();
    Ok(FiniteSectionSolve {
        solutions,
        increments,
        singular,
    })
}
