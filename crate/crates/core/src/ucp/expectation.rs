//! Trace-preserving conditional expectations onto finite-dimensional
//! subalgebras given by systems of matrix units.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::{ComplexMatrix, C64, ONE};

/// Threshold below which `tau(e_ii)` marks a summand as null.
pub const NULL_SUMMAND: f64 = 1e-14;

/// Matrix units `e^{(s)}_{ij}` in `M_dim`, stored row-major per summand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixUnits {
    pub dim: usize,
    pub sizes: Vec<usize>,
    units: Vec<Vec<ComplexMatrix>>,
}

fn unit_matrix(dim: usize, r: usize, c: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    m[(r, c)] = ONE;
    m
}

impl MatrixUnits {
    /// Validates `e_ij e_kl = delta_jk e_il`, `e_ij* = e_ji` and mutual
    /// orthogonality of summands.
    pub fn new(dim: usize, units: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        let mut sizes = Vec::with_capacity(units.len());
        for s in &units {
            let m = (s.len() as f64).sqrt().round() as usize;
            if m == 0 || m * m != s.len() {
                return domain("each summand needs m^2 matrix units");
            }
            if s.iter().any(|e| e.rows() != dim || e.cols() != dim) {
                return domain("matrix unit has the wrong dimension");
            }
            sizes.push(m);
        }
        let this = Self { dim, sizes, units };
        this.check_relations()?;
        Ok(this)
    }

    fn check_relations(&self) -> Result<()> {
        const TOL: f64 = 1e-12;
        for (s, &m) in self.sizes.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    let e = self.unit(s, i, j);
                    if (&e.adjoint() - self.unit(s, j, i)).max_abs() > TOL {
                        return domain(format!("e({s};{i},{j})* != e({s};{j},{i})"));
                    }
                    for (t, &n) in self.sizes.iter().enumerate() {
                        for k in 0..n {
                            for l in 0..n {
                                let prod = e.matmul(self.unit(t, k, l));
                                let err = if s == t && j == k {
                                    (&prod - self.unit(s, i, l)).max_abs()
                                } else {
                                    prod.max_abs()
                                };
                                if err > TOL {
                                    return domain(format!(
                                        "inconsistent matrix units at ({s};{i},{j}) x ({t};{k},{l})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn unit(&self, s: usize, i: usize, j: usize) -> &ComplexMatrix {
        &self.units[s][i * self.sizes[s] + j]
    }

    /// Diagonal subalgebra `C^n` of `M_n`.
    pub fn diagonal(n: usize) -> Self {
        Self {
            dim: n,
            sizes: vec![1; n],
            units: (0..n).map(|i| vec![unit_matrix(n, i, i)]).collect(),
        }
    }

    /// `M_n` itself.
    pub fn full(n: usize) -> Self {
        Self::block_diagonal(&[n])
    }

    /// `M_m (x) 1_r` inside `M_{m r}`: `e_ij (x) I_r`.
    pub fn amplified(m: usize, r: usize) -> Self {
        let id = ComplexMatrix::identity(r);
        Self {
            dim: m * r,
            sizes: vec![m],
            units: vec![(0..m * m).map(|p| unit_matrix(m, p / m, p % m).kron(&id)).collect()],
        }
    }

    /// `M_{m_1} (+) ... (+) M_{m_k}` as block-diagonal matrices.
    pub fn block_diagonal(sizes: &[usize]) -> Self {
        let dim = sizes.iter().sum();
        let mut offset = 0;
        let units = sizes
            .iter()
            .map(|&m| {
                let s = (0..m * m).map(|p| unit_matrix(dim, offset + p / m, offset + p % m)).collect();
                offset += m;
                s
            })
            .collect();
        Self {
            dim,
            sizes: sizes.to_vec(),
            units,
        }
    }

    /// `sum e_ii` over all summands.
    pub fn unit_of_b(&self) -> ComplexMatrix {
        let mut u = ComplexMatrix::zeros(self.dim, self.dim);
        for (s, &m) in self.sizes.iter().enumerate() {
            for i in 0..m {
                u = &u + self.unit(s, i, i);
            }
        }
        u
    }

    pub fn is_unital(&self) -> bool {
        (&self.unit_of_b() - &ComplexMatrix::identity(self.dim)).max_abs() <= 1e-12
    }
}

/// Trace `tau(x) = sum_b w_b Tr(x_bb)` on block-diagonal matrices with the
/// given diagonal block sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientTrace {
    pub block_sizes: Vec<usize>,
    pub weights: Vec<f64>,
}

impl AmbientTrace {
    pub fn new(block_sizes: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if block_sizes.len() != weights.len() || block_sizes.is_empty() || block_sizes.contains(&0) {
            return domain("trace needs one weight per nonempty block");
        }
        if weights.iter().any(|&w| !(w >= 0.0 && w.is_finite())) {
            return domain("trace weights must be nonnegative");
        }
        let total: f64 = block_sizes.iter().zip(&weights).map(|(&m, &w)| m as f64 * w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return domain(format!("trace is not a state (tau(1) = {total})"));
        }
        Ok(Self { block_sizes, weights })
    }

    /// `tr_n`.
    pub fn normalized(n: usize) -> Self {
        Self {
            block_sizes: vec![n],
            weights: vec![1.0 / n as f64],
        }
    }

    pub fn dim(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn eval(&self, x: &ComplexMatrix) -> C64 {
        let mut offset = 0;
        let mut acc = C64::new(0.0, 0.0);
        for (&m, &w) in self.block_sizes.iter().zip(&self.weights) {
            let tr: C64 = (offset..offset + m).map(|i| x[(i, i)]).sum();
            acc += tr * w;
            offset += m;
        }
        acc
    }
}

/// `Phi_B(x) = sum_s sum_ij tau(x e_ij) / tau(e_ii) e_ji`.
///
/// Summands on which `tau` vanishes use `Tr` in place of `tau`, which is
/// the expectation of `e_0 x e_0` onto the null part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalExpectation {
    pub units: MatrixUnits,
    pub tau: AmbientTrace,
    pub null_summands: Vec<bool>,
}

pub fn conditional_expectation(units: &MatrixUnits, tau: &AmbientTrace) -> Result<ConditionalExpectation> {
    if units.dim != tau.dim() {
        return domain("matrix units and trace live in different dimensions");
    }
    let null_summands = (0..units.sizes.len())
        .map(|s| tau.eval(units.unit(s, 0, 0)).re <= NULL_SUMMAND)
        .collect();
    Ok(ConditionalExpectation {
        units: units.clone(),
        tau: tau.clone(),
        null_summands,
    })
}

impl ConditionalExpectation {
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.units.dim;
        if x.rows() != n || x.cols() != n {
            return domain("conditional expectation input has the wrong dimension");
        }
        let mut out = ComplexMatrix::zeros(n, n);
        for (s, &m) in self.units.sizes.iter().enumerate() {
            let functional = |y: &ComplexMatrix| {
                if self.null_summands[s] {
                    y.trace()
                } else {
                    self.tau.eval(y)
                }
            };
            let norm = functional(self.units.unit(s, 0, 0)).re;
            for i in 0..m {
                for j in 0..m {
                    let c = functional(&x.matmul(self.units.unit(s, i, j))) / norm;
                    if c != C64::new(0.0, 0.0) {
                        out = &out + &self.units.unit(s, j, i).scale(c);
                    }
                }
            }
        }
        Ok(out)
    }
}
